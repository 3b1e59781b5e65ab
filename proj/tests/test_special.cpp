#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>

#include "stokeseig/errors.hpp"
#include "stokeseig/special.hpp"

using namespace stokeseig;

namespace {

// x, J0, J1, J2, Y0, Y1 (50-digit mpmath, tests/oracles/special_values.py)
const double kBesselTable[][6] = {
    {1e-8, 9.9999999999999997e-1, 4.9999999999999999e-9, 1.25e-17, -1.1800773877179531e+1, -6.3661977236758195e+7},
    {1e-3, 9.9999975000001562e-1, 4.999999375000026e-4, 1.2499998958333366e-7, -4.4714166113759233, -6.3662216723113943e+2},
    {0.5, 9.384698072408129e-1, 2.4226845767487389e-1, 3.0604023458682641e-2, -4.4451873350670656e-1, -1.4714723926702431},
    {1, 7.6519768655796655e-1, 4.4005058574493352e-1, 1.1490348493190048e-1, 8.8256964215676958e-2, -7.8121282130028872e-1},
    {2.5, -4.8383776468197996e-2, 4.9709410246427404e-1, 4.4605905843961723e-1, 4.9807035961523189e-1, 1.459181379667858e-1},
    {7, 3.000792705195556e-1, -4.6828234823458327e-3, -3.0141722008594012e-1, -2.5949743967209265e-2, -3.0266723702418487e-1},
    {24.9, 8.3245968353015682e-2, -1.3485569953140874e-1, -9.407775144790795e-2, -1.3649918399676511e-1, -8.6002557595554442e-2},
    {25, 9.6266783275958116e-2, -1.253502495802899e-1, -1.0629480324238131e-1, -1.2724943226800614e-1, -9.882996478323741e-2},
    {25.1, 1.0827567149994929e-1, -1.1463478413442273e-1, -1.1740991724771206e-1, -1.167677076380371e-1, -1.1062223322783083e-1},
    {60, -9.147180408906187e-2, 4.6598383758166318e-2, 9.3025083547667413e-2, 4.7358952209449399e-2, 9.1869609369866895e-2},
    {100, 1.9985850304223122e-2, -7.7145352014112158e-2, -2.1528757344505366e-2, -7.7244313365083152e-2, -2.0372312002759793e-2},
    {200, -1.5437439930565092e-2, -5.4304538182378223e-2, 1.4894394548741309e-2, -5.4265775249817911e-2, 1.5301824580389989e-2},
};

struct GbhRow {
    double k, r;
    cdouble g[4];
};

// Radial derivatives of (log r / (2 pi) + (i/4) H0(k r)) / k^2, same oracle.
const GbhRow kGbhTable[] = {
    {2, 1e-3, {{-2.2966973247614384e-2, 6.2499937500015625e-2}, {-5.4355677016293296e-4, -1.2499993750001042e-4},
               {-4.6397873516575112e-1, -1.2499981250005208e-1}, {7.9579082321794151e+1, 3.7499979166670312e-4}}},
    {2, 0.5, {{-3.3095510282561259e-2, 4.7824855409872909e-2}, {-1.8074131116588422e-2, -5.5006323218116689e-2},
              {5.8212503287096083e-2, -8.1286775203258259e-2}, {2.0188487960959851e-1, 1.6257355040651652e-1}}},
    {2, 0.3, {{-2.8622688906946599e-2, 5.7000303968575673e-2}, {-2.4919799153927336e-2, -3.5837623507989467e-2},
              {5.9385296508602001e-3, -1.0854247084767114e-1}, {3.3351391748663384e-1, 1.0696291343542313e-1}}},
    {13.48, 0.05, {{-2.3214346089127602e-3, 1.2239462875485613e-3}, {-3.6319361048672503e-3, -5.9017513236076696e-3},
                   {1.7681933940686568e-2, -1.043687430168107e-1}, {2.0366463034671452, 7.9908392460642517e-1}}},
    {13.48, 1.2, {{7.2540215292796546e-5, -2.5858249600010323e-4}, {4.2535185318568763e-3, -1.067699220382889e-3},
                  {1.2291466682480038e-2, 4.7876878131496232e-2}, {-6.4756849117615682e-1, 1.5337319618061683e-1}}},
    {3, 10, {{4.3976859151264431e-2, -2.3991106550288948e-3}, {8.8038524783888844e-3, 9.895921884718578e-3},
             {-3.0204318169504895e-2, 2.0602403706788195e-2}, {-6.0210707654576048e-2, -9.1024578114298836e-2}}},
};

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }
double rel(cdouble got, cdouble want) { return std::abs(got - want) / std::abs(want); }

cdouble deriv(const RadialKernelValues& v, int j) {
    const cdouble g[4] = {v.g0, v.g1, v.g2, v.g3};
    return g[j];
}

}  // namespace

TEST_CASE("bessel_j closed-form values") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(2, 0.0) == 0.0);
    CHECK(rel(bessel_j(0, 1.0), 0.7651976865579666) <= 1e-15);
}

TEST_CASE("bessel_j matches high-precision table for x up to 100") {
    for (const auto& row : kBesselTable) {
        const double x = row[0];
        if (x > 100.0) continue;
        CAPTURE(x);
        for (int n = 0; n <= 2; ++n) {
            CAPTURE(n);
            CHECK(rel(bessel_j(n, x), row[1 + n]) <= 1e-13);
        }
    }
}

TEST_CASE("bessel_j parity for negative arguments") {
    CHECK(bessel_j(0, -2.5) == doctest::Approx(bessel_j(0, 2.5)).epsilon(1e-15));
    CHECK(bessel_j(1, -2.5) == doctest::Approx(-bessel_j(1, 2.5)).epsilon(1e-15));
    CHECK(bessel_j(2, -2.5) == doctest::Approx(bessel_j(2, 2.5)).epsilon(1e-15));
}

TEST_CASE("hankel1 matches high-precision table on [1e-8, 200]") {
    for (const auto& row : kBesselTable) {
        const double x = row[0];
        CAPTURE(x);
        CHECK(rel(hankel1(0, x), cdouble(row[1], row[4])) <= 1e-12);
        CHECK(rel(hankel1(1, x), cdouble(row[2], row[5])) <= 1e-12);
        const BesselPair p = bessel_jy01(x);
        CHECK(rel(p.y0, row[4]) <= 1e-12);
        CHECK(rel(p.y1, row[5]) <= 1e-12);
    }
}

TEST_CASE("hankel1 reference value at 1") {
    const cdouble h = hankel1(0, 1.0);
    CHECK(std::abs(h.real() - 0.7651976865579666) <= 1e-15);
    CHECK(std::abs(h.imag() - 0.0882569642156769) <= 1e-15);
}

TEST_CASE("hankel1 small-argument singular behavior") {
    constexpr double gamma = 0.57721566490153286061;
    for (double x : {1e-6, 1e-9, 1e-12}) {
        CAPTURE(x);
        const double y0_lead = 2.0 / std::numbers::pi * (std::log(x / 2.0) + gamma);
        CHECK(std::abs(hankel1(0, x).imag() - y0_lead) <= 1e-9);
        CHECK(hankel1(1, x).imag() * x == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-9));
    }
}

TEST_CASE("hankel1 rejects nonpositive arguments") {
    CHECK_THROWS_AS(hankel1(0, 0.0), DomainError);
    CHECK_THROWS_AS(hankel1(1, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_y(0, 0.0), DomainError);
}

TEST_CASE("Wronskian J0 Y1 - J1 Y0 = -2/(pi x)") {
    for (int i = 0; i <= 60; ++i) {
        const double x = 0.1 * std::pow(500.0, i / 60.0);
        const BesselPair p = bessel_jy01(x);
        CAPTURE(x);
        CHECK(rel(p.j0 * p.y1 - p.j1 * p.y0, -2.0 / (std::numbers::pi * x)) <= 1e-11);
    }
}

TEST_CASE("hankel1 is continuous across the asymptotic switch") {
    const double s = kAsymptoticSwitch;
    for (int n = 0; n <= 1; ++n) {
        const cdouble lo = hankel1(n, std::nextafter(s, 0.0));
        const cdouble hi = hankel1(n, std::nextafter(s, 100.0));
        CHECK(std::abs(lo - hi) <= 1e-11 * std::abs(hi));
        for (double d : {1e-3, 1e-2, 0.1}) {
            // Second differences see a branch jump; smooth functions give O(d^2).
            const cdouble jump = hankel1(n, s + d) - 2.0 * hankel1(n, s) + hankel1(n, s - d);
            CHECK(std::abs(jump) <= 1e-11 + d * d);
        }
    }
}

TEST_CASE("complex-argument hankel1 reduces to the real one on the real axis") {
    for (double x : {0.3, 1.0, 7.0, 30.0}) {
        for (int n = 0; n <= 1; ++n) CHECK(rel(hankel1(n, cdouble(x, 0.0)), hankel1(n, x)) <= 1e-13);
    }
}

TEST_CASE("gbh_radial matches high-precision derivatives") {
    for (const auto& row : kGbhTable) {
        CAPTURE(row.k);
        CAPTURE(row.r);
        const RadialKernelValues v = gbh_radial(row.k, row.r);
        // Absolute contract on the value, relative on derivatives.
        CHECK(std::abs(v.g0 - row.g[0]) <= 1e-14 * std::max(1.0, std::abs(row.g[0])));
        for (int j = 1; j < 4; ++j) {
            CAPTURE(j);
            CHECK(rel(deriv(v, j), row.g[j]) <= 1e-11);
        }
        CHECK(rel(v.h0, hankel1(0, row.k * row.r)) <= 1e-14);
        CHECK(rel(v.h1, hankel1(1, row.k * row.r)) <= 1e-14);
    }
}

TEST_CASE("gbh_radial fused series agrees with direct evaluation at small kr") {
    const RadialKernelValues v = gbh_radial(2.0, 1e-3);
    CHECK(rel(v.g2, kGbhTable[0].g[2]) <= 1e-9);
}

TEST_CASE("gbh_radial complex k") {
    struct Row {
        cdouble k;
        double r;
        cdouble g0, g1;
    };
    const Row rows[] = {
        {{2.0, 0.5}, 0.7, {-1.007487335453119e-2, 3.2834024547787304e-2}, {-9.8089286853274246e-3, -5.238293207015447e-2}},
        {{13.0, 0.01}, 0.2, {-2.226531729441249e-3, -1.3922077714840783e-4}, {8.3134629897095389e-3, -9.0484995414398762e-3}},
    };
    for (const auto& row : rows) {
        const RadialKernelValues v = gbh_radial(row.k, row.r);
        CHECK(rel(v.g0, row.g0) <= 1e-11);
        CHECK(rel(v.g1, row.g1) <= 1e-11);
    }
}

TEST_CASE("Laplacian of G^BH is the Helmholtz part") {
    // Away from r = 0 the log term is harmonic, so g'' + g'/r = -(i/4) H0(k r).
    for (double r : {0.05, 0.5, 3.0, 30.0}) {
        const double k = 2.0;
        const RadialKernelValues v = gbh_radial(k, r);
        const cdouble res = v.g2 + v.g1 / r + cdouble(0.0, 0.25) * v.h0;
        CAPTURE(r);
        CHECK(std::abs(res) <= 1e-11 * std::max(1.0, std::abs(v.g2)));
    }
}

TEST_CASE("oscillatory biharmonic annihilation by finite differences") {
    const double k = 3.0;
    auto f = [&](double r) {
        const RadialKernelValues v = gbh_radial(k, r);
        return v.g2 + v.g1 / r + k * k * v.g0;  // (Delta + k^2) g
    };
    for (double r : {0.4, 1.1, 2.7}) {
        const double h = 1e-3;
        const cdouble d2 = (-f(r + 2 * h) + 16.0 * f(r + h) - 30.0 * f(r) + 16.0 * f(r - h) - f(r - 2 * h)) / (12 * h * h);
        const cdouble d1 = (-f(r + 2 * h) + 8.0 * f(r + h) - 8.0 * f(r - h) + f(r - 2 * h)) / (12 * h);
        const cdouble lap = d2 + d1 / r;
        const double scale = k * k * std::abs(gbh_radial(k, r).g2) + std::abs(d2);
        CAPTURE(r);
        CHECK(std::abs(lap) <= 1e-6 * scale);
    }
}

TEST_CASE("gbh_radial leading small-r behavior is r^2 log r") {
    // g0(r) - g0(0+) = O(r^2 log r): the first derivative vanishes like r log r.
    const double k = 2.0;
    for (double r : {1e-4, 1e-6, 1e-8}) {
        const RadialKernelValues v = gbh_radial(k, r);
        CHECK(std::abs(v.g1) <= 10.0 * r * std::abs(std::log(r)));
        CHECK(std::isfinite(v.g0.real()));
        CHECK(std::isfinite(v.g0.imag()));
    }
}

TEST_CASE("gbh_radial is pure") {
    const RadialKernelValues a = gbh_radial(cdouble(2.0, 0.0), 0.37);
    const RadialKernelValues b = gbh_radial(cdouble(2.0, 0.0), 0.37);
    CHECK(std::memcmp(&a, &b, sizeof(a)) == 0);
}

TEST_CASE("gbh_radial domain errors") {
    CHECK_THROWS_AS(gbh_radial(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(gbh_radial(2.0, -1.0), DomainError);
    CHECK_THROWS_AS(gbh_radial(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gbh_radial(cdouble(1.0, -0.5), 1.0), DomainError);
}
