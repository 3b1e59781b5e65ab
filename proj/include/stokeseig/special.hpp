#pragma once

/**
 * @file special.hpp
 * @brief Bessel/Hankel functions of order 0..2 and the radial derivatives of the
 * oscillatory biharmonic Green's function
 *
 *     g(r) = (1/k^2) * ( log(r)/(2 pi) + (i/4) H0(k r) ).
 *
 * Real arguments use Miller's backward recurrence with Neumann series for Y0/Y1
 * below kAsymptoticSwitch and the Hankel asymptotic expansion above it. The same
 * code is instantiated for complex arguments (Re z > 0), where it is intended for
 * diagnostics near the real axis.
 */

#include <complex>

namespace stokeseig {

using cdouble = std::complex<double>;

/// Argument above which the Hankel asymptotic expansion replaces the recurrence.
inline constexpr double kAsymptoticSwitch = 25.0;

/// |k r| below which gbh_radial uses the fused ascending series.
inline constexpr double kFusedSeriesSwitch = 1.0;

/// J_n(x) for n in {0, 1, 2}. Negative x follows the parity of J_n.
double bessel_j(int n, double x);

/// Y_n(x) for n in {0, 1}; throws DomainError for x <= 0.
double bessel_y(int n, double x);

/// H_n^(1)(x) = J_n(x) + i Y_n(x) for n in {0, 1}; throws DomainError for x <= 0.
cdouble hankel1(int n, double x);

/// Complex-argument H_n^(1)(z) for n in {0, 1}; requires Re z > 0 or (Re z == 0, Im z > 0).
cdouble hankel1(int n, cdouble z);

/// Values J0, J1, Y0, Y1 computed together (one recurrence pass).
struct BesselPair {
    double j0, j1, y0, y1;
};
BesselPair bessel_jy01(double x);

/// Radial derivatives of g = G^BH at distance r and Hankel values at k r.
struct RadialKernelValues {
    cdouble g0, g1, g2, g3;  ///< d^j g / dr^j, j = 0..3
    cdouble h0, h1;          ///< H0^(1)(k r), H1^(1)(k r)
};

/// Evaluate G^BH and its first three radial derivatives. Requires k != 0,
/// Im k >= 0 and r > 0 (DomainError otherwise).
RadialKernelValues gbh_radial(cdouble k, double r);

}  // namespace stokeseig
