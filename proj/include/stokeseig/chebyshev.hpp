#pragma once

/// @file chebyshev.hpp
/// @brief Chebyshev series on [a, b]: Lobatto interpolation, evaluation and colleague-matrix roots.

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace stokeseig {

using cdouble = std::complex<double>;

/// Chebyshev-Lobatto points cos(pi j / n), j = 0..n, mapped to [a, b].
std::vector<double> lobatto_points(double a, double b, int n);

/// Coefficients of the degree-n interpolant through values at lobatto_points(., ., n).
Eigen::VectorXcd chebyshev_coefficients(const Eigen::VectorXcd& values);

/// Clenshaw evaluation at t in [-1, 1] (complex t allowed).
cdouble chebyshev_eval(const Eigen::VectorXcd& c, cdouble t);

/// Coefficients of d/dt of the series.
Eigen::VectorXcd chebyshev_derivative(const Eigen::VectorXcd& c);

/// Index of the last coefficient above tol * max |c| (0 for the zero series).
int chebyshev_degree(const Eigen::VectorXcd& c, double tol);

/// Roots in t of the series truncated to `degree`, from the colleague matrix.
std::vector<cdouble> chebyshev_roots(const Eigen::VectorXcd& c, int degree);

}  // namespace stokeseig
