#include "stokeseig/potentials.hpp"

#include <numbers>

#include "stokeseig/errors.hpp"

namespace stokeseig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double separation(const Vec2& x, const Vec2& y, const char* fn) {
    const double r = (x - y).norm();
    if (!(r > 0.0)) throw SingularityError(std::string(fn) + ": coincident source and target");
    return r;
}

// Third derivatives of g contracted as Q_abc va vb, returned as the vector over c.
Eigen::Vector2cd third_contract(const ChainCoefficients& cc, const Vec2& d, const Vec2& va, const Vec2& vb) {
    const double da = d.dot(va), db = d.dot(vb), ab = va.dot(vb);
    Eigen::Vector2cd out;
    for (int c = 0; c < 2; ++c) {
        out(c) = cc.C * da * db * d(c) + cc.B * (ab * d(c) + va(c) * db + vb(c) * da);
    }
    return out;
}

// Rotated gradient: perp-grad F = (-d2 F, d1 F).
Eigen::Vector2cd perp(const Eigen::Vector2cd& g) { return Eigen::Vector2cd(-g(1), g(0)); }

}  // namespace

void KernelContext::validate() const {
    if (k == 0.0) throw DomainError("k must be nonzero");
    if (k.imag() < 0.0) throw DomainError("Im k must be nonnegative");
    if (formulation == Formulation::combined_field && !(eta > 0.0)) {
        throw DomainError("combined-field formulation requires eta > 0");
    }
}

ChainCoefficients chain_coefficients(cdouble k, double r) {
    const RadialKernelValues v = gbh_radial(k, r);
    const double ir = 1.0 / r;
    ChainCoefficients c;
    c.A = v.g1 * ir;
    c.B = (v.g2 - v.g1 * ir) * ir * ir;
    c.C = (v.g3 - 3.0 * v.g2 * ir + 3.0 * v.g1 * ir * ir) * ir * ir * ir;
    c.lap = v.g2 + v.g1 * ir;
    c.e = (v.g3 + v.g2 * ir - v.g1 * ir * ir) * ir;
    return c;
}

Kernel2x2 stokeslet(const KernelContext& ctx, const Vec2& x, const Vec2& y) {
    const double r = separation(x, y, "stokeslet");
    const Vec2 d = x - y;
    const ChainCoefficients c = chain_coefficients(ctx.k, r);
    Kernel2x2 G;
    const cdouble diag = c.A - c.lap;
    G(0, 0) = diag + c.B * d(0) * d(0);
    G(1, 1) = diag + c.B * d(1) * d(1);
    G(0, 1) = G(1, 0) = c.B * d(0) * d(1);
    return G;
}

Vec2 stokeslet_pressure(const Vec2& x, const Vec2& y) {
    const double r = separation(x, y, "stokeslet_pressure");
    return (x - y) / (kTwoPi * r * r);
}

std::array<Kernel2x2, 2> stresslet(const KernelContext& ctx, const Vec2& x, const Vec2& y) {
    const double r = separation(x, y, "stresslet");
    const Vec2 d = x - y;
    const ChainCoefficients c = chain_coefficients(ctx.k, r);
    const Vec2 p = d / (kTwoPi * r * r);
    std::array<Kernel2x2, 2> T;
    for (int l = 0; l < 2; ++l) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double dij = i == j, dil = i == l, djl = j == l;
                const cdouble q = c.C * d(i) * d(j) * d(l) + c.B * (dij * d(l) + dil * d(j) + djl * d(i));
                T[l](i, j) = -dil * p(j) - dij * c.e * d(l) - djl * c.e * d(i) + 2.0 * q;
            }
        }
    }
    return T;
}

Kernel2x2 stresslet_contract(cdouble k, const Vec2& d, const Vec2& nu) {
    const double r2 = d.squaredNorm();
    const ChainCoefficients c = chain_coefficients(k, std::sqrt(r2));
    const double inv = 1.0 / (kTwoPi * r2);
    const double dn = d.dot(nu);
    // (T_{.,.,l} nu_l)^T with x-derivatives: output index i, density index j.
    Kernel2x2 K;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double dij = i == j;
            K(i, j) = -nu(j) * d(i) * inv - dij * c.e * dn - nu(i) * c.e * d(j) +
                      2.0 * (c.C * d(i) * d(j) * dn + c.B * (dij * dn + nu(j) * d(i) + nu(i) * d(j)));
        }
    }
    return K;
}

Kernel2x2 stresslet_normal(const KernelContext& ctx, const Vec2& x, const Vec2& y, const Vec2& nu_y) {
    separation(x, y, "stresslet_normal");
    // T is odd in x - y, so swapping the arguments flips the sign.
    return -stresslet_contract(ctx.k, x - y, nu_y);
}

Kernel2x2 stresslet_normal_nutau(const KernelContext& ctx, const Vec2& x, const Vec2& y, const Vec2& nu_y) {
    const double r = separation(x, y, "stresslet_normal_nutau");
    const Vec2 d = x - y;
    const ChainCoefficients c = chain_coefficients(ctx.k, r);
    const Vec2 tau(-nu_y(1), nu_y(0));
    // Gradients in y: grad_y G^L = -d/(2 pi r^2); odd derivatives of g change sign.
    const Eigen::Vector2cd grad_l = (-d / (kTwoPi * r * r)).cast<cdouble>();
    const Eigen::Vector2cd v_nt = -perp(third_contract(c, d, nu_y, tau));
    const Eigen::Vector2cd v_tt = -perp(third_contract(c, d, tau, tau));
    const Eigen::Vector2cd v_nn = -perp(third_contract(c, d, nu_y, nu_y));
    const Eigen::Vector2cd col_nu = -grad_l + 2.0 * v_nt;
    const Eigen::Vector2cd col_tau = v_tt - v_nn;
    return col_nu * nu_y.transpose().cast<cdouble>() + col_tau * tau.transpose().cast<cdouble>();
}

Kernel2x2 traction_kernel(const KernelContext& ctx, const Vec2& x, const Vec2& y, const Vec2& nu_x) {
    separation(x, y, "traction_kernel");
    return stresslet_contract(ctx.k, x - y, nu_x).transpose();
}

Eigen::VectorXcd w_apply(const BoundaryPanels& panels, const Eigen::VectorXcd& mu) {
    const int n = panels.num_nodes();
    if (mu.size() != 2 * n) throw DomainError("w_apply: density size mismatch");
    cdouble flux = 0.0;
    for (int j = 0; j < n; ++j) {
        flux += panels.weights(j) * (panels.nu(0, j) * mu(2 * j) + panels.nu(1, j) * mu(2 * j + 1));
    }
    flux /= panels.total_length;
    Eigen::VectorXcd out(2 * n);
    for (int i = 0; i < n; ++i) {
        out(2 * i) = panels.nu(0, i) * flux;
        out(2 * i + 1) = panels.nu(1, i) * flux;
    }
    return out;
}

}  // namespace stokeseig
