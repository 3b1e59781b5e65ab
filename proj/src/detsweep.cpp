#include "stokeseig/detsweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stokeseig/chebyshev.hpp"
#include "stokeseig/errors.hpp"
#include "stokeseig/parallel.hpp"

namespace stokeseig {

LogDet det_at(const SystemMatrix& sys) { return log_determinant(sys.A); }

namespace {

double to_t(const ChebInterpolant& f, double k) { return (2.0 * k - f.a - f.b) / (f.b - f.a); }

void refit(ChebInterpolant& f, double eps) {
    f.log_scale = -std::numeric_limits<double>::infinity();
    for (const auto& d : f.raw) f.log_scale = std::max(f.log_scale, d.log_abs);
    if (!std::isfinite(f.log_scale)) f.log_scale = 0.0;
    Eigen::VectorXcd v(f.raw.size());
    for (std::size_t j = 0; j < f.raw.size(); ++j) v(j) = f.raw[j].value(f.log_scale);
    f.coeffs = chebyshev_coefficients(v);
    f.trailing_ratio = trailing_ratio(f.coeffs);
    f.degree = chebyshev_degree(f.coeffs, eps);
}

}  // namespace

cdouble ChebInterpolant::operator()(double k) const { return chebyshev_eval(coeffs, to_t(*this, k)); }

cdouble ChebInterpolant::derivative(double k) const {
    return chebyshev_eval(chebyshev_derivative(coeffs), to_t(*this, k)) * (2.0 / (b - a));
}

double ChebInterpolant::sup_norm() const {
    double m = 0.0;
    for (const auto& d : raw) m = std::max(m, std::abs(d.value(log_scale)));
    return m;
}

double trailing_ratio(const Eigen::VectorXcd& c) {
    const double big = c.cwiseAbs().maxCoeff();
    if (big == 0.0) return 0.0;
    const Eigen::Index tail = std::min<Eigen::Index>(3, c.size());
    return c.tail(tail).cwiseAbs().maxCoeff() / big;
}

ChebInterpolant fit_interval(const DetFunction& det, double a, double b, const FitOptions& opt) {
    if (!(b > a)) throw DomainError("fit_interval: requires b > a");
    if (opt.initial_degree < 2) throw DomainError("fit_interval: initial degree must be at least 2");
    ChebInterpolant f;
    f.a = a;
    f.b = b;
    int n = opt.initial_degree;
    f.k_samples = lobatto_points(a, b, n);
    f.raw.resize(n + 1);
    parallel_for(n + 1, [&](int j) { f.raw[j] = det(f.k_samples[j]); }, opt.max_workers);
    for (;;) {
        refit(f, opt.eps_cheb);
        if (f.trailing_ratio <= opt.eps_cheb) {
            f.converged = true;
            return f;
        }
        if (2 * n > opt.max_degree) {
            f.recommend_split = true;
            return f;
        }
        // Doubling keeps every old point as an even-indexed point of the new grid.
        const int m = 2 * n;
        const auto pts = lobatto_points(a, b, m);
        std::vector<LogDet> raw(m + 1);
        for (int j = 0; j <= n; ++j) raw[2 * j] = f.raw[j];
        parallel_for(n, [&](int j) { raw[2 * j + 1] = det(pts[2 * j + 1]); }, opt.max_workers);
        f.k_samples = pts;
        f.raw = std::move(raw);
        n = m;
    }
}

std::vector<cdouble> find_roots(const ChebInterpolant& fit, double rho) {
    std::vector<cdouble> out;
    for (const cdouble t : chebyshev_roots(fit.coeffs, fit.degree)) {
        cdouble z = t + std::sqrt(t * t - 1.0);
        if (std::abs(z) < 1.0) z = 1.0 / z;
        if (std::abs(z) >= rho) continue;
        out.push_back(0.5 * (fit.a + fit.b) + 0.5 * (fit.b - fit.a) * t);
    }
    std::sort(out.begin(), out.end(), [](cdouble x, cdouble y) { return x.real() < y.real(); });
    return out;
}

std::string to_string(RootStatus s) {
    switch (s) {
        case RootStatus::accepted: return "accepted";
        case RootStatus::spurious_pair: return "spurious_pair";
        case RootStatus::complex_discarded: return "complex_discarded";
        case RootStatus::probe_failed: return "probe_failed";
    }
    return "unknown";
}

std::vector<EigenReport> postprocess(const std::vector<cdouble>& roots, const ChebInterpolant& fit,
                                     const SingularProbe& probe, const PostprocessOptions& opt, int interval_id) {
    const double cutoff = std::sqrt(opt.eps_cheb);
    const double sup = fit.coeffs.size() > 0 ? fit.sup_norm() : 1.0;
    std::vector<EigenReport> out;
    for (const cdouble r : roots) {
        EigenReport rep;
        rep.k_cheb = r;
        rep.k_root = r.real();
        rep.interval = interval_id;
        if (fit.coeffs.size() > 0) {
            const double dp = std::abs(chebyshev_eval(chebyshev_derivative(fit.coeffs), (2.0 * r - fit.a - fit.b) /
                                                                                        (fit.b - fit.a)) *
                                       (2.0 / (fit.b - fit.a)));
            rep.error_estimate = dp > 0.0 ? opt.eps_cheb * sup / dp : std::numeric_limits<double>::infinity();
        }
        if (std::abs(r.imag()) > cutoff) rep.status = RootStatus::complex_discarded;
        out.push_back(std::move(rep));
    }
    std::sort(out.begin(), out.end(), [](const EigenReport& x, const EigenReport& y) { return x.k_root < y.k_root; });

    for (auto& rep : out) {
        if (rep.status != RootStatus::accepted) continue;
        try {
            const SingularTriplets s = probe(rep.k_root);
            rep.sigma_min = s.values(0);
            rep.sigma_2 = s.values.size() > 1 ? s.values(1) : std::numeric_limits<double>::infinity();
            rep.null_density = s.vectors.col(0);
        } catch (const std::exception& e) {
            rep.status = RootStatus::probe_failed;
            rep.note = e.what();
        }
    }

    // Near-coincident real parts: one eigenvalue found twice, or a double root.
    EigenReport* prev = nullptr;
    for (auto& rep : out) {
        if (rep.status != RootStatus::accepted) continue;
        if (prev != nullptr && rep.k_root - prev->k_root < cutoff) {
            const Eigen::VectorXcd& vp = rep.null_density;
            const Eigen::VectorXcd& vq = prev->null_density;
            const double misalignment = (vp - vq * vq.dot(vp)).norm();
            if (misalignment < opt.pair_alignment) {
                rep.status = RootStatus::spurious_pair;
                rep.note = "duplicate of k = " + std::to_string(prev->k_root);
            }
            for (EigenReport* r : {prev, &rep}) {
                if (r->status == RootStatus::accepted && !(r->sigma_2 > opt.simple_sigma2)) {
                    r->double_root_candidate = true;
                }
            }
            if (rep.status != RootStatus::accepted) continue;
        }
        prev = &rep;
    }
    return out;
}

std::vector<EigenReport> SweepResult::accepted() const {
    std::vector<EigenReport> out;
    for (const auto& r : reports) {
        if (r.status == RootStatus::accepted) out.push_back(r);
    }
    return out;
}

bool SweepResult::any_fit_failed() const {
    return std::any_of(intervals.begin(), intervals.end(), [](const auto& d) { return d.fit_failed; });
}

SweepResult sweep(const KernelContext& ctx, const BoundaryPanels& panels,
                  const std::vector<std::pair<double, double>>& intervals, const SweepOptions& opt) {
    ctx.validate();
    SweepResult result;
    for (std::size_t id = 0; id < intervals.size(); ++id) {
        const auto [a, b] = intervals[id];
        if (!(b > a)) throw DomainError("sweep: interval " + std::to_string(id) + " is empty");
        if (a <= 0.0 && b >= 0.0) throw DomainError("sweep: interval " + std::to_string(id) + " contains k = 0");
        IntervalDiagnostics diag;
        diag.id = static_cast<int>(id);
        const QuadraturePlan plan = make_plan(panels, 0.5 * (a + b), opt.quad);
        diag.plan_points = plan.num_points();
        auto system_at = [&](double k) {
            KernelContext c = ctx;
            c.k = k;
            return build_system(c, panels, plan, opt.system);
        };
        diag.fit = fit_interval([&](double k) { return det_at(system_at(k)); }, a, b, opt.fit);
        if (!diag.fit.converged) {
            diag.fit_failed = true;
            result.intervals.push_back(std::move(diag));
            continue;
        }
        // An endpoint shared with the next interval belongs to that interval.
        const bool closed = id + 1 == intervals.size() || intervals[id + 1].first != b;
        for (const cdouble r : find_roots(diag.fit)) {
            if (r.real() >= a && (r.real() < b || (closed && r.real() <= b))) diag.raw_roots.push_back(r);
        }
        auto reports = postprocess(
            diag.raw_roots, diag.fit, [&](double k) { return smallest_singular_values(system_at(k).A, 2); },
            opt.post, diag.id);
        for (const auto& r : reports) {
            if (r.status != RootStatus::accepted) continue;
            diag.max_error_estimate = std::max(diag.max_error_estimate, r.error_estimate);
        }
        diag.needs_refinement = diag.max_error_estimate > opt.refine_threshold;
        result.reports.insert(result.reports.end(), reports.begin(), reports.end());
        result.intervals.push_back(std::move(diag));
    }
    std::stable_sort(result.reports.begin(), result.reports.end(),
                     [](const EigenReport& x, const EigenReport& y) { return x.k_root < y.k_root; });
    return result;
}

}  // namespace stokeseig
