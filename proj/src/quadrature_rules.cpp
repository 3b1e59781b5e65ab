#include "stokeseig/quadrature_rules.hpp"

#include <cmath>
#include <numbers>

#include "stokeseig/errors.hpp"

namespace stokeseig {

namespace {

// Squared Gauss-Legendre nodes with weights solved in 60-digit arithmetic
// (tools/gen_log_rule.py).
constexpr std::array<double, 20> kLogNodes = {
    1.180403728976953293e-5,  3.2450550601698308956e-4, 1.9256988960929150723e-3,
    6.4708371889131830147e-3, 1.6086875420035421795e-2, 3.3114230828179365163e-2,
    5.9812772445143045487e-2, 9.806101582803447844e-2,  1.4907867292425838354e-1,
    2.1320081654245023663e-1, 2.8972733767594757039e-1, 3.7686452406590346162e-1,
    4.7176710454345403911e-1, 5.7067977439597014349e-1, 6.6916791155469439062e-1,
    7.6241878188018621441e-1, 8.4558780901113200641e-1, 9.1416012714741882094e-1,
    9.6429643278393077436e-1, 9.9314040322238469432e-1};

constexpr std::array<double, 20> kLogWeights = {
    5.7503443762120142606e-5, 7.3881516272890812548e-4, 2.7403909434304828581e-3,
    6.710452614488710006e-3,  1.2915527055568048066e-2, 2.1521595803924475835e-2,
    3.219297850587770178e-2,  4.4510552003144492822e-2, 5.7583534222927546732e-2,
    7.0544406307211628544e-2, 8.220987896342134243e-2,  9.1586797308642108646e-2,
    9.7589850135313936836e-2, 9.9489929433005129659e-2, 9.6679818432354633639e-2,
    8.9006940646990150781e-2, 7.657421001013378651e-2,  5.9924148186651929917e-2,
    3.9868835141029132512e-2, 1.7553835679393734161e-2};

struct Barycentric {
    std::array<double, 16> lambda;
    Barycentric() {
        const auto& r = gl16();
        for (int j = 0; j < 16; ++j) {
            double prod = 1.0;
            for (int m = 0; m < 16; ++m) {
                if (m != j) prod *= r.nodes[j] - r.nodes[m];
            }
            lambda[j] = 1.0 / prod;
        }
    }
};

const Barycentric& bary() {
    static const Barycentric b;
    return b;
}

}  // namespace

Rule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int m = 2; m <= n; ++m) {
            const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule& gl16() {
    static const Rule r = gauss_legendre(16);
    return r;
}

const Rule& log_rule() {
    static const Rule r{std::vector<double>(kLogNodes.begin(), kLogNodes.end()),
                        std::vector<double>(kLogWeights.begin(), kLogWeights.end())};
    return r;
}

std::array<double, 16> lagrange16(double u) {
    const auto& r = gl16();
    const auto& b = bary();
    std::array<double, 16> out{};
    double denom = 0.0;
    for (int j = 0; j < 16; ++j) {
        const double diff = u - r.nodes[j];
        if (diff == 0.0) {
            out.fill(0.0);
            out[j] = 1.0;
            return out;
        }
        out[j] = b.lambda[j] / diff;
        denom += out[j];
    }
    for (auto& v : out) v /= denom;
    return out;
}

std::array<double, 16> lagrange16_derivative(double u) {
    // l_j'(u) = l_j(u) * sum_{m != j} 1/(u - u_m), computed from the product form
    // so that it stays valid at the nodes.
    const auto& r = gl16();
    const auto& b = bary();
    std::array<double, 16> out{};
    for (int j = 0; j < 16; ++j) {
        double total = 0.0;
        for (int m = 0; m < 16; ++m) {
            if (m == j) continue;
            double prod = 1.0;
            for (int q = 0; q < 16; ++q) {
                if (q != j && q != m) prod *= u - r.nodes[q];
            }
            total += prod;
        }
        out[j] = b.lambda[j] * total;
    }
    return out;
}

}  // namespace stokeseig
