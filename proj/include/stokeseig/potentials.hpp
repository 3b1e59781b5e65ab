#pragma once

/**
 * @file potentials.hpp
 * @brief Oscillatory Stokeslet, stresslet and layer-potential kernels built from
 * the radial derivatives of G^BH.
 *
 * With d = x - y, r = |d| and g = G^BH(r):
 *   d_i d_j g         = A delta_ij + B d_i d_j
 *   d_i d_j d_l g     = C d_i d_j d_l + B (delta_ij d_l + delta_il d_j + delta_jl d_i)
 *   d_l (Laplacian g) = e d_l
 */

#include <Eigen/Core>
#include <array>

#include "stokeseig/geometry.hpp"
#include "stokeseig/special.hpp"

namespace stokeseig {

enum class Formulation { double_layer, combined_field };

struct KernelContext {
    cdouble k{1.0, 0.0};
    double eta = 1.0;
    Formulation formulation = Formulation::double_layer;

    /// Throws DomainError when k = 0, Im k < 0, or eta <= 0 for combined_field.
    void validate() const;
};

using Kernel2x2 = Eigen::Matrix2cd;

/// Chain-rule coefficients of G^BH at separation r.
struct ChainCoefficients {
    cdouble A, B, C, lap, e;
};
ChainCoefficients chain_coefficients(cdouble k, double r);

/// G(x, y) = -I Laplacian(g) + Hessian(g).
Kernel2x2 stokeslet(const KernelContext& ctx, const Vec2& x, const Vec2& y);

/// Pressure of the Stokeslet: p = grad G^L . f, returned as grad G^L(x - y).
Vec2 stokeslet_pressure(const Vec2& x, const Vec2& y);

/// Full stresslet tensor, T[l](i, j) = T_ijl(x, y).
std::array<Kernel2x2, 2> stresslet(const KernelContext& ctx, const Vec2& x, const Vec2& y);

/// (T_{.,.,l} nu_l)^T for the stresslet with x-derivatives at separation d = x - y.
Kernel2x2 stresslet_contract(cdouble k, const Vec2& d, const Vec2& nu);

/// Double-layer kernel (T_{.,.,l}(y, x) nu_l(y))^T: the stresslet of a Stokeslet at x
/// observed at the source point y. With this sign S[t] - D[u] = u inside the domain
/// and D[mu] jumps by +mu/2 across the boundary in the direction of nu.
Kernel2x2 stresslet_normal(const KernelContext& ctx, const Vec2& x, const Vec2& y, const Vec2& nu_y);

/// Same kernel assembled from the normal/tangential split
/// (-grad G^L + 2 perp-grad d_nu d_tau g) mu_nu + perp-grad (d_tau tau - d_nu nu) g mu_tau,
/// with gradients taken in the source variable y.
Kernel2x2 stresslet_normal_nutau(const KernelContext& ctx, const Vec2& x, const Vec2& y, const Vec2& nu_y);

/// Traction kernel of the single layer: T_{.,.,l}(x, y) nu_l(x); equals stresslet_normal(y, x, nu_x)^T.
Kernel2x2 traction_kernel(const KernelContext& ctx, const Vec2& x, const Vec2& y, const Vec2& nu_x);

/// W[mu](x_i) = nu(x_i) (1/|Gamma|) sum_j w_j nu(y_j) . mu(y_j); layout 2 i + c.
Eigen::VectorXcd w_apply(const BoundaryPanels& panels, const Eigen::VectorXcd& mu);

}  // namespace stokeseig
