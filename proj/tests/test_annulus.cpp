#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "stokeseig/detsweep.hpp"
#include "stokeseig/reference.hpp"

using namespace stokeseig;

namespace {

// Full Dirichlet spectrum of the annulus 1 < r < 1.7 in [13, 14] (tests/oracles/annulus_modes.py).
// Angular index 0 is simple, all others double.
const std::vector<double> kDirichlet = {13.052771645343876, 13.146380777410352, 13.171656320073475,
                                        13.325770942876732, 13.48025717955055,  13.518120977343577,
                                        13.750547496299593, 13.752344192095748};

// Interior traction (Neumann) resonances of the unit-disk inclusion in [13, 14]
// (tests/oracles/disk_traction_modes.py). None of them is a Dirichlet eigenvalue.
const std::vector<double> kInclusionResonances = {13.170370856016123, 13.714343502448062, 13.880302573704197,
                                                  13.939364538190292};

double distance_to(const std::vector<double>& set, double k) {
    double d = 1e300;
    for (double s : set) d = std::min(d, std::abs(s - k));
    return d;
}

}  // namespace

TEST_CASE("combined-field sweep of the annulus over [13, 14] against the analytic spectrum") {
    PanelizeOptions po;
    po.max_panel_len = 1e3;
    const BoundaryPanels b = panelize(make_annulus(1.0, 1.7, 8), po);
    REQUIRE(b.num_nodes() == 368);
    KernelContext ctx;
    ctx.formulation = Formulation::combined_field;
    const SweepResult res = sweep(ctx, b, {{13.0, 14.0}});
    REQUIRE_FALSE(res.any_fit_failed());

    const auto radial = annulus_dirichlet_roots(1.0, 1.7, 13.0, 14.0).roots;
    std::vector<double> simple;
    for (const auto& r : res.accepted()) {
        CAPTURE(r.k_root);
        CHECK(distance_to(kDirichlet, r.k_root) <= std::max(1e-6, 2.0 * r.error_estimate));
        CHECK(r.sigma_min <= 1e-6);
        if (!r.double_root_candidate && r.error_estimate <= 1e-8) simple.push_back(r.k_root);
    }
    // Well-separated simple roots are exactly the radial family.
    REQUIRE(simple.size() == radial.size());
    for (std::size_t i = 0; i < simple.size(); ++i) CHECK(std::abs(simple[i] - radial[i]) <= 1e-8);

    // Every eigenvalue is seen, possibly as a discarded complex pair for the double modes.
    for (double k : kDirichlet) {
        double best = 1e300;
        for (const auto& r : res.reports) best = std::min(best, std::abs(r.k_root - k));
        CAPTURE(k);
        CHECK(best <= 1e-3);
    }
    // No root at the inclusion resonances.
    for (const auto& r : res.reports) {
        CAPTURE(r.k_root);
        CHECK(distance_to(kInclusionResonances, r.k_root) >= 1e-4);
    }
}
