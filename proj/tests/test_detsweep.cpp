#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stokeseig/detsweep.hpp"
#include "stokeseig/errors.hpp"

using namespace stokeseig;

namespace {

LogDet as_logdet(cdouble z) {
    LogDet d;
    d.log_abs = std::log(std::abs(z));
    d.phase = z / std::abs(z);
    return d;
}

DetFunction mock(auto f) {
    return [f](double k) { return as_logdet(f(k)); };
}

FitOptions serial() {
    FitOptions o;
    o.max_workers = 1;
    return o;
}

// Probe returning fixed triplets: sigma_min, sigma_2 and a unit null vector chosen by index.
SingularProbe fixed_probe(double s1, double s2, auto pick) {
    return [=](double k) {
        SingularTriplets t;
        t.values.resize(2);
        t.values << s1, s2;
        t.vectors = Eigen::MatrixXcd::Zero(4, 2);
        t.vectors(pick(k), 0) = 1.0;
        t.vectors((pick(k) + 1) % 4, 1) = 1.0;
        return t;
    };
}

BoundaryPanels unit_circle() {
    PanelizeOptions po;
    po.max_panel_len = 1e3;
    return panelize({make_circle(Vec2::Zero(), 1.0, Orientation::outer, 8)}, po);
}

}  // namespace

TEST_CASE("quadratic mock determinant") {
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(k * k - 2.0, 0.0); }), 0.0, 2.0, serial());
    CHECK(fit.converged);
    CHECK(fit.degree == 2);
    CHECK(fit.trailing_ratio <= 1e-15);
    const auto roots = find_roots(fit);
    std::vector<double> real;
    for (const cdouble r : roots) {
        if (r.real() >= 0.0 && r.real() <= 2.0) real.push_back(r.real());
    }
    REQUIRE(real.size() == 1);
    CHECK(std::abs(real[0] - std::sqrt(2.0)) <= 1e-12);
    // The other root -sqrt(2) lies outside the ellipse and is not reported.
    CHECK(roots.size() == 1);
}

TEST_CASE("double root splits by at most the square root of the noise") {
    const double c = 1.3;
    const ChebInterpolant fit = fit_interval(mock([c](double k) { return cdouble((k - c) * (k - c), 0.0); }), 1.0, 2.0, serial());
    const auto roots = find_roots(fit);
    REQUIRE(roots.size() == 2);
    for (const cdouble r : roots) CHECK(std::abs(r - c) <= 1e-6);
}

TEST_CASE("per-interval normalization makes the fit scale invariant") {
    auto f = [](double k) { return cdouble(std::cos(3.0 * k), std::sin(k) - 0.2); };
    const ChebInterpolant a = fit_interval(mock(f), 1.0, 3.0, serial());
    const ChebInterpolant b = fit_interval(mock([f](double k) { return 1e250 * f(k); }), 1.0, 3.0, serial());
    const ChebInterpolant s = fit_interval(mock([f](double k) { return 1e-250 * f(k); }), 1.0, 3.0, serial());
    CHECK(b.log_scale - a.log_scale == doctest::Approx(250.0 * std::log(10.0)));
    CHECK(s.log_scale - a.log_scale == doctest::Approx(-250.0 * std::log(10.0)));
    CHECK(a.degree == b.degree);
    CHECK(a.degree == s.degree);
    CHECK((a.coeffs - b.coeffs).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((a.coeffs - s.coeffs).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(a.sup_norm() == doctest::Approx(1.0));
    const auto ra = find_roots(a), rb = find_roots(b);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) CHECK(std::abs(ra[i] - rb[i]) <= 1e-12);
}

TEST_CASE("faster oscillation needs a higher degree") {
    auto f = [](double k) { return cdouble(std::cos(k * k), 0.0); };
    const ChebInterpolant low = fit_interval(mock(f), 1.0, 2.0, serial());
    const ChebInterpolant high = fit_interval(mock(f), 10.0, 11.0, serial());
    CHECK(low.converged);
    CHECK(high.converged);
    CHECK(high.degree > low.degree);
    for (double k : {10.1, 10.55, 10.93}) {
        CHECK(std::abs(high(k) * std::exp(high.log_scale) - f(k)) <= 1e-11);
    }
}

TEST_CASE("degree cap without convergence recommends a split") {
    FitOptions o = serial();
    o.max_degree = 32;
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(std::cos(40.0 * k), 0.0); }), 0.0, 3.0, o);
    CHECK_FALSE(fit.converged);
    CHECK(fit.recommend_split);
}

TEST_CASE("fit_interval rejects degenerate input") {
    auto f = mock([](double k) { return cdouble(k, 0.0); });
    CHECK_THROWS_AS(fit_interval(f, 2.0, 1.0), DomainError);
    FitOptions o;
    o.initial_degree = 1;
    CHECK_THROWS_AS(fit_interval(f, 1.0, 2.0, o), DomainError);
}

TEST_CASE("parallel and serial sampling agree bitwise") {
    auto f = mock([](double k) { return cdouble(std::sin(5 * k), std::cos(2 * k)); });
    FitOptions par;
    par.max_workers = 4;
    const ChebInterpolant a = fit_interval(f, 1.0, 2.0, serial()), b = fit_interval(f, 1.0, 2.0, par);
    CHECK((a.coeffs.array() == b.coeffs.array()).all());
}

TEST_CASE("trailing ratio") {
    Eigen::VectorXcd c(6);
    c << 2.0, 1.0, 0.5, 1e-3, 2e-3, 1e-4;
    CHECK(trailing_ratio(c) == doctest::Approx(1e-3));
}

TEST_CASE("postprocess: imaginary cutoff") {
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(k * k - 2.0, 0.0); }), 0.0, 2.0, serial());
    const auto probe = fixed_probe(1e-12, 1.0, [](double) { return 0; });
    const auto reps = postprocess({cdouble(1.0, 1e-3), cdouble(1.5, 1e-8)}, fit, probe);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].status == RootStatus::complex_discarded);
    CHECK(reps[1].status == RootStatus::accepted);
    CHECK(reps[1].k_root == 1.5);
}

TEST_CASE("postprocess: aligned near pair is one eigenvalue found twice") {
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(k * k - 2.0, 0.0); }), 0.0, 2.0, serial());
    const double c = 1.2;
    const auto probe = fixed_probe(1e-12, 1e-2, [](double) { return 0; });
    const auto reps = postprocess({cdouble(c + 1e-8, 0.0), cdouble(c, 0.0)}, fit, probe);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].k_root == c);
    CHECK(reps[0].status == RootStatus::accepted);
    CHECK(reps[1].status == RootStatus::spurious_pair);
    CHECK_FALSE(reps[0].double_root_candidate);
}

TEST_CASE("postprocess: orthogonal near pair is a double root candidate only when sigma_2 is small") {
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(k * k - 2.0, 0.0); }), 0.0, 2.0, serial());
    const double c = 1.2;
    auto pick = [c](double k) { return k > c ? 2 : 0; };
    const auto dbl = postprocess({cdouble(c, 0.0), cdouble(c + 1e-8, 0.0)}, fit, fixed_probe(1e-12, 1e-11, pick));
    REQUIRE(dbl.size() == 2);
    for (const auto& r : dbl) {
        CHECK(r.status == RootStatus::accepted);
        CHECK(r.double_root_candidate);
    }
    const auto simple = postprocess({cdouble(c, 0.0), cdouble(c + 1e-8, 0.0)}, fit, fixed_probe(1e-12, 1e-3, pick));
    for (const auto& r : simple) {
        CHECK(r.status == RootStatus::accepted);
        CHECK_FALSE(r.double_root_candidate);
    }
}

TEST_CASE("postprocess: error estimate is eps times sup over the derivative") {
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(k * k - 2.0, 0.0); }), 0.0, 2.0, serial());
    const double r = std::sqrt(2.0);
    const auto reps = postprocess({cdouble(r, 0.0)}, fit, fixed_probe(1e-12, 1.0, [](double) { return 0; }));
    // Normalized by the largest sample |det| = 2: P' = 2 sqrt(2) / 2 and sup |P| = 1.
    CHECK(reps[0].error_estimate == doctest::Approx(1e-13 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(reps[0].sigma_min == 1e-12);
}

TEST_CASE("postprocess: probe failure is reported, not thrown") {
    const ChebInterpolant fit = fit_interval(mock([](double k) { return cdouble(k * k - 2.0, 0.0); }), 0.0, 2.0, serial());
    const SingularProbe bad = [](double) -> SingularTriplets { throw std::runtime_error("no convergence"); };
    const auto reps = postprocess({cdouble(1.4, 0.0)}, fit, bad);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].status == RootStatus::probe_failed);
    CHECK(reps[0].note.find("no convergence") != std::string::npos);
}

TEST_CASE("status names") {
    CHECK(to_string(RootStatus::accepted) == "accepted");
    CHECK(to_string(RootStatus::spurious_pair) == "spurious_pair");
    CHECK(to_string(RootStatus::complex_discarded) == "complex_discarded");
    CHECK(to_string(RootStatus::probe_failed) == "probe_failed");
}

TEST_CASE("sweep rejects intervals that are empty or contain zero") {
    const BoundaryPanels b = unit_circle();
    KernelContext c;
    CHECK_THROWS_AS(sweep(c, b, {{-1.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(sweep(c, b, {{0.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(sweep(c, b, {{2.0, 2.0}}), DomainError);
}

TEST_CASE("sweep finds the lowest axisymmetric disk mode") {
    const BoundaryPanels b = unit_circle();
    KernelContext c;
    const SweepResult res = sweep(c, b, {{3.5, 4.2}});
    const auto acc = res.accepted();
    REQUIRE(acc.size() == 1);
    CHECK(std::abs(acc[0].k_root - 3.831705970207512) <= 1e-10);
    CHECK(acc[0].sigma_min <= 1e-9);
    CHECK(acc[0].sigma_2 >= 1e-3);
    CHECK_FALSE(acc[0].double_root_candidate);
    CHECK(acc[0].error_estimate <= 1e-8);
    CHECK_FALSE(res.any_fit_failed());
    REQUIRE(res.intervals.size() == 1);
    CHECK(res.intervals[0].fit.converged);
    CHECK(res.intervals[0].plan_points > 0);
}
