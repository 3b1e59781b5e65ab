#pragma once

/**
 * @file quadrature.hpp
 * @brief Nystrom matrices of the single- and double-layer operators on a
 * panelized boundary, and off-surface evaluation of layer potentials.
 *
 * Far panels use their own 16 nodes. The target's own panel and panels closer
 * than far_factor panel-lengths are integrated against the 16 Lagrange basis
 * polynomials with an error-controlled adaptive rule: a log-weighted product
 * rule on pieces touching the target, Gauss-Legendre elsewhere. The resulting
 * points depend only on the geometry and the planning frequency, so one plan
 * serves a whole k-interval.
 */

#include <Eigen/Core>
#include <array>
#include <vector>

#include "stokeseig/geometry.hpp"
#include "stokeseig/potentials.hpp"

namespace stokeseig {

enum class LayerKind { single, double_layer, traction };

struct QuadratureOptions {
    double far_factor = 1.5;  ///< native rule when |x - panel centre| >= far_factor * panel length
    double tol = 1e-13;       ///< adaptive tolerance relative to the block magnitude
    int max_depth = 40;
};

struct PlanPoint {
    Vec2 d;   ///< target minus source
    Vec2 nu;  ///< source normal
    double w = 0.0;  ///< rule weight times arc-length density
    std::array<double, 16> basis{};
};

/// Special points for one (target node, source panel) pair.
struct NearBlock {
    int panel = 0;
    std::vector<PlanPoint> points;
};

struct QuadraturePlan {
    cdouble plan_k{1.0, 0.0};
    QuadratureOptions options;
    std::vector<std::vector<NearBlock>> near;  ///< per target node
    std::size_t num_points() const;
};

/// Build the special-quadrature plan. Throws QuadratureError when refinement exceeds max_depth.
QuadraturePlan make_plan(const BoundaryPanels& panels, cdouble plan_k, const QuadratureOptions& opt = {});

/// x(ux on panel px) - x(uy on panel py), accurate to relative precision for nearby points
/// on the same component.
Vec2 boundary_chord(const BoundaryPanels& b, int px, double ux, int py, double uy);

struct LayerRequest {
    bool single = false;
    bool double_layer = false;
    bool traction = false;  ///< principal-value traction of the single layer (adjoint of D)
};

struct LayerMatrices {
    Eigen::MatrixXcd S, D, T;  ///< empty when not requested
};

/// Weighted Nystrom matrices; row/column index 2 i + c for node i, component c.
LayerMatrices assemble_layers(cdouble k, const BoundaryPanels& panels, const QuadraturePlan& plan,
                              const LayerRequest& request);

/// Convenience: plan at ctx.k and assemble one operator.
Eigen::MatrixXcd assemble_layer_matrix(const KernelContext& ctx, const BoundaryPanels& panels, LayerKind which,
                                       const QuadratureOptions& opt = {});

/// Single- or double-layer potential of mu (node values, layout 2 i + c) at targets off the boundary.
/// Throws DomainError for a target on the boundary.
std::vector<Eigen::Vector2cd> eval_offsurface(const KernelContext& ctx, const BoundaryPanels& panels,
                                              const Eigen::VectorXcd& mu, const std::vector<Vec2>& targets,
                                              LayerKind which, const QuadratureOptions& opt = {});

}  // namespace stokeseig
