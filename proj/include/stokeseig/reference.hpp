#pragma once

/**
 * @file reference.hpp
 * @brief Analytic eigenvalue oracles: the radially symmetric Dirichlet family of
 * the annulus r1 < |x| < r2 and the Neumann eigenvalues J2(k) = 0 of the unit disk.
 */

#include <Eigen/Core>
#include <Eigen/LU>
#include <string>
#include <vector>

#include "stokeseig/geometry.hpp"
#include "stokeseig/special.hpp"

namespace stokeseig {

struct TranscendentalRoots {
    std::string function;
    std::vector<double> roots;      ///< increasing
    std::vector<double> residuals;  ///< |defining function| at each root
};

/// Roots of J1(k r1) Y1(k r2) - J1(k r2) Y1(k r1) in [k_min, k_max] (scan step 0.01,
/// then bisection). Residuals are those of the complex 2x2 determinant.
TranscendentalRoots annulus_dirichlet_roots(double r1, double r2, double k_min, double k_max);

/// The 2x2 matrix [[H0'(k r1), J0'(k r1)], [H0'(k r2), J0'(k r2)]].
Eigen::Matrix2cd annulus_radial_matrix(double r1, double r2, double k);

struct AnnulusMode {
    double k = 0.0;
    cdouble alpha, beta;  ///< stream function alpha H0(k r) + beta J0(k r), |(alpha, beta)| = 1
    double residual = 0.0;

    /// Velocity curl-perp of the stream function at x.
    Eigen::Vector2cd velocity(const Vec2& x) const;
};

/// Unit null vector of annulus_radial_matrix at a root; DomainError if the matrix is not singular.
AnnulusMode annulus_eigenfunction(double r1, double r2, double k_root);

/// Roots of -k J0'(k) + k^2 J0''(k) in [k_min, k_max].
TranscendentalRoots disk_neumann_roots(double k_min, double k_max);

}  // namespace stokeseig
