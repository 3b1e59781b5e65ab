#include "stokeseig/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "stokeseig/errors.hpp"

namespace stokeseig {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr int kMaxMillerOrder = 192;

double magnitude(double x) { return std::abs(x); }
double magnitude(const cdouble& z) { return std::abs(z); }

double real_log(double x) { return std::log(x); }
cdouble real_log(const cdouble& z) { return std::log(z); }

/// J0, J1, J2 plus the Neumann sums needed for Y0 and Y1.
template <class T>
struct MillerValues {
    T j0, j1, j2;
    T y0, y1;
};

// Start index for the backward recurrence; even, and large enough that the
// neglected tail is below double precision relative to the normalisation sum.
int miller_start(double ax) {
    int m = static_cast<int>(ax + 18.0 + 9.0 * std::cbrt(ax));
    m += m % 2;
    return m < 8 ? 8 : m;
}

template <class T>
MillerValues<T> miller(const T& z) {
    const double az = magnitude(z);
    const int m_start = miller_start(az);
    std::array<T, kMaxMillerOrder + 2> jn{};
    jn[m_start + 1] = T(0.0);
    jn[m_start] = T(1e-30);
    const T two_over_z = T(2.0) / z;
    for (int n = m_start; n >= 1; --n) {
        jn[n - 1] = static_cast<double>(n) * two_over_z * jn[n] - jn[n + 1];
        if (magnitude(jn[n - 1]) > 1e250) {
            for (int q = n - 1; q <= m_start + 1; ++q) jn[q] *= 1e-250;
        }
    }
    T norm = jn[0];
    for (int n = 2; n <= m_start; n += 2) norm += 2.0 * jn[n];
    const T scale = T(1.0) / norm;

    // Neumann series: Y0 = (2/pi)(log(z/2)+gamma) J0 - (4/pi) sum (-1)^k J_2k / k
    //                 Y1 = -(2/pi) J0/z + (2/pi)(log(z/2)+gamma) J1
    //                      + (2/pi) sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
    T s0(0.0), s1(0.0);
    for (int k = m_start / 2; k >= 1; --k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s0 += sign * jn[2 * k] / static_cast<double>(k);
        s1 += sign * (jn[2 * k - 1] - jn[2 * k + 1]) / static_cast<double>(k);
    }
    MillerValues<T> out;
    out.j0 = jn[0] * scale;
    out.j1 = jn[1] * scale;
    out.j2 = jn[2] * scale;
    const T lg = real_log(z / 2.0) + kEulerGamma;
    out.y0 = (2.0 / kPi) * lg * out.j0 - (4.0 / kPi) * s0 * scale;
    out.y1 = -(2.0 / kPi) * out.j0 / z + (2.0 / kPi) * lg * out.j1 + (2.0 / kPi) * s1 * scale;
    return out;
}

/// Hankel asymptotic expansion of H_nu^(1)(z), |z| large, Re z > 0.
cdouble hankel_asymptotic(int nu, const cdouble& z) {
    const double mu = 4.0 * nu * nu;
    cdouble sum(1.0, 0.0);
    cdouble term(1.0, 0.0);
    const cdouble i_over_z = cdouble(0.0, 1.0) / z;
    double prev = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k) * i_over_z;
        const double mag = std::abs(term);
        if (mag > prev) break;  // asymptotic series started diverging
        sum += term;
        if (mag < 1e-17 * std::abs(sum)) break;
        prev = mag;
    }
    const cdouble phase = std::exp(cdouble(0.0, 1.0) * (z - (0.5 * nu + 0.25) * kPi));
    return std::sqrt(2.0 / (kPi * z)) * phase * sum;
}

void check_order(int n, int max_order, const char* fn) {
    if (n < 0 || n > max_order) {
        throw DomainError(std::string(fn) + ": unsupported order " + std::to_string(n));
    }
}

}  // namespace

BesselPair bessel_jy01(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_jy01: x must be positive and finite");
    if (x < kAsymptoticSwitch) {
        const auto v = miller(x);
        return {v.j0, v.j1, v.y0, v.y1};
    }
    const cdouble h0 = hankel_asymptotic(0, cdouble(x, 0.0));
    const cdouble h1 = hankel_asymptotic(1, cdouble(x, 0.0));
    return {h0.real(), h1.real(), h0.imag(), h1.imag()};
}

double bessel_j(int n, double x) {
    check_order(n, 2, "bessel_j");
    if (!std::isfinite(x)) throw DomainError("bessel_j: x must be finite");
    const double sign = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    const double ax = std::abs(x);
    if (ax == 0.0) return n == 0 ? 1.0 : 0.0;
    if (ax < kAsymptoticSwitch) {
        const auto v = miller(ax);
        const double vals[3] = {v.j0, v.j1, v.j2};
        return sign * vals[n];
    }
    const auto p = bessel_jy01(ax);
    if (n == 0) return p.j0;
    if (n == 1) return sign * p.j1;
    return 2.0 * p.j1 / ax - p.j0;
}

double bessel_y(int n, double x) {
    check_order(n, 1, "bessel_y");
    if (!(x > 0.0)) throw DomainError("bessel_y: x must be positive");
    const auto p = bessel_jy01(x);
    return n == 0 ? p.y0 : p.y1;
}

cdouble hankel1(int n, double x) {
    check_order(n, 1, "hankel1");
    if (!(x > 0.0)) throw DomainError("hankel1: x must be positive");
    const auto p = bessel_jy01(x);
    return n == 0 ? cdouble(p.j0, p.y0) : cdouble(p.j1, p.y1);
}

cdouble hankel1(int n, cdouble z) {
    check_order(n, 1, "hankel1");
    if (z.imag() == 0.0) return hankel1(n, z.real());
    if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() <= 0.0)) {
        throw DomainError("hankel1: complex argument outside the right half plane");
    }
    if (std::abs(z) >= kAsymptoticSwitch) return hankel_asymptotic(n, z);
    const auto v = miller(z);
    const cdouble i(0.0, 1.0);
    return n == 0 ? v.j0 + i * v.y0 : v.j1 + i * v.y1;
}

RadialKernelValues gbh_radial(cdouble k, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("gbh_radial: r must be positive and finite, got " + std::to_string(r));
    if (k == 0.0) throw DomainError("gbh_radial: k must be nonzero");
    if (k.imag() < 0.0) throw DomainError("gbh_radial: Im k must be nonnegative");

    const cdouble i(0.0, 1.0);
    const cdouble z = k * r;
    RadialKernelValues out;
    out.h0 = hankel1(0, z);
    out.h1 = hankel1(1, z);
    const cdouble inv_k2 = 1.0 / (k * k);

    if (std::abs(z) >= kFusedSeriesSwitch) {
        const double r2 = r * r;
        out.g0 = inv_k2 * (std::log(r) / (2.0 * kPi) + 0.25 * i * out.h0);
        out.g1 = inv_k2 * (1.0 / (2.0 * kPi * r) - 0.25 * i * k * out.h1);
        out.g2 = inv_k2 * (-1.0 / (2.0 * kPi * r2) - 0.25 * i * k * (k * out.h0 - out.h1 / r));
        out.g3 = inv_k2 * (1.0 / (kPi * r2 * r) -
                           0.25 * i * k * (-k * k * out.h1 - k * out.h0 / r + 2.0 * out.h1 / r2));
        return out;
    }

    // Fused series: log(r)/(2pi) + (i/4) H0(kr) = c + sum_m u_m k^2 r^{2m} (alpha_m - log r/(2pi)),
    // u_m = (-1)^m k^{2m-2} / (4^m (m!)^2), alpha_m = c + H_m/(2pi), H_m harmonic numbers.
    const cdouble c = 0.25 * i - (std::log(k / 2.0) + kEulerGamma) / (2.0 * kPi);
    const double log_r = std::log(r);
    const double inv_2pi = 1.0 / (2.0 * kPi);
    const cdouble k2_quarter = -k * k / 4.0;
    cdouble u(-0.25, 0.0);
    double r2m = r * r;
    double harmonic = 1.0;
    cdouble s0 = c * inv_k2, s1(0.0), s2(0.0), s3(0.0);
    const double inv_r = 1.0 / r;
    for (int m = 1; m <= 40; ++m) {
        const double p = 2.0 * m;
        const double P1 = p, P2 = p * (p - 1.0), P3 = p * (p - 1.0) * (p - 2.0);
        const double Q1 = 1.0, Q2 = 2.0 * p - 1.0, Q3 = (p - 2.0) * (2.0 * p - 1.0) + p * (p - 1.0);
        const cdouble a = c + harmonic * inv_2pi - log_r * inv_2pi;
        const cdouble coef = u * r2m;
        const cdouble t0 = coef * a;
        const cdouble t1 = coef * inv_r * (P1 * a - Q1 * inv_2pi);
        const cdouble t2 = coef * inv_r * inv_r * (P2 * a - Q2 * inv_2pi);
        const cdouble t3 = coef * inv_r * inv_r * inv_r * (P3 * a - Q3 * inv_2pi);
        s0 += t0;
        s1 += t1;
        s2 += t2;
        s3 += t3;
        if (std::abs(t1) <= 1e-18 * std::abs(s1) && std::abs(t3) <= 1e-18 * std::abs(s3) &&
            std::abs(t0) <= 1e-18 * std::abs(s0 - c * inv_k2) && m > 1) {
            break;
        }
        u *= k2_quarter / static_cast<double>((m + 1) * (m + 1));
        r2m *= r * r;
        harmonic += 1.0 / (m + 1.0);
    }
    out.g0 = s0;
    out.g1 = s1;
    out.g2 = s2;
    out.g3 = s3;
    return out;
}

}  // namespace stokeseig
