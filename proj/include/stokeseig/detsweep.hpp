#pragma once

/**
 * @file detsweep.hpp
 * @brief Fredholm determinant sweeps: adaptive Chebyshev fits of det A(k) over
 * k-intervals, root extraction and filtering of spurious roots.
 */

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stokeseig/geometry.hpp"
#include "stokeseig/operator.hpp"
#include "stokeseig/potentials.hpp"
#include "stokeseig/quadrature.hpp"

namespace stokeseig {

/// Determinant of the system matrix; never overflows.
LogDet det_at(const SystemMatrix& sys);

struct FitOptions {
    double eps_cheb = 1e-13;
    int initial_degree = 16;
    int max_degree = 1024;
    int max_workers = 0;  ///< concurrent determinant samples (0: thread count)
};

struct ChebInterpolant {
    double a = 0.0, b = 0.0;
    std::vector<double> k_samples;   ///< Lobatto points, descending from b to a
    std::vector<LogDet> raw;         ///< determinant at each sample
    double log_scale = 0.0;          ///< log of the largest sampled |det|
    Eigen::VectorXcd coeffs;         ///< of det / exp(log_scale) in t = (2k - a - b)/(b - a)
    int degree = 0;                  ///< last coefficient above eps_cheb * max
    double trailing_ratio = 1.0;
    bool converged = false;
    bool recommend_split = false;    ///< degree cap reached without convergence

    cdouble operator()(double k) const;
    /// d/dk of the normalized determinant.
    cdouble derivative(double k) const;
    /// Largest normalized |det| over the samples.
    double sup_norm() const;
};

using DetFunction = std::function<LogDet(double)>;

/// Chebyshev-Lobatto doubling until the trailing-coefficient ratio falls below eps_cheb.
ChebInterpolant fit_interval(const DetFunction& det, double a, double b, const FitOptions& opt = {});

/// Trailing-coefficient ratio: largest of the last three coefficients over the largest coefficient.
double trailing_ratio(const Eigen::VectorXcd& c);

/// Roots in k of the fitted polynomial whose t-image lies in the Bernstein ellipse of parameter rho.
std::vector<cdouble> find_roots(const ChebInterpolant& fit, double rho = 1.1);

enum class RootStatus { accepted, spurious_pair, complex_discarded, probe_failed };
std::string to_string(RootStatus s);

struct EigenReport {
    double k_root = 0.0;
    cdouble k_cheb;  ///< raw root of the interpolant
    double sigma_min = 0.0, sigma_2 = 0.0;
    Eigen::VectorXcd null_density;
    double error_estimate = 0.0;
    int interval = 0;
    RootStatus status = RootStatus::accepted;
    bool double_root_candidate = false;
    std::string note;
};

struct PostprocessOptions {
    double eps_cheb = 1e-13;
    double pair_alignment = 1e-5;  ///< duplicate when || v_p - v_q (v_q^H v_p) || is below this
    double simple_sigma2 = 1e-5;   ///< sigma_2 above this declares a near-double root simple
};

/// Two smallest singular triplets of A(k).
using SingularProbe = std::function<SingularTriplets(double)>;

/// Imaginary-part cutoff, duplicate-pair test and error estimates for the roots of one fit.
std::vector<EigenReport> postprocess(const std::vector<cdouble>& roots, const ChebInterpolant& fit,
                                     const SingularProbe& probe, const PostprocessOptions& opt = {},
                                     int interval_id = 0);

struct SweepOptions {
    FitOptions fit;
    PostprocessOptions post;
    QuadratureOptions quad;
    SystemOptions system;
    double refine_threshold = 1e-8;  ///< flag intervals whose root error estimate exceeds this
};

struct IntervalDiagnostics {
    int id = 0;
    ChebInterpolant fit;
    std::vector<cdouble> raw_roots;
    bool fit_failed = false;
    bool needs_refinement = false;
    double max_error_estimate = 0.0;
    std::size_t plan_points = 0;
};

struct SweepResult {
    std::vector<EigenReport> reports;  ///< every root, sorted by k, with status
    std::vector<IntervalDiagnostics> intervals;
    std::vector<EigenReport> accepted() const;
    bool any_fit_failed() const;
};

/// Fit, root-find and filter each interval. One quadrature plan per interval, made at its midpoint.
SweepResult sweep(const KernelContext& ctx, const BoundaryPanels& panels,
                  const std::vector<std::pair<double, double>>& intervals, const SweepOptions& opt = {});

}  // namespace stokeseig
