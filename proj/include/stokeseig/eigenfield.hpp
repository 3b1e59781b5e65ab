#pragma once

/**
 * @file eigenfield.hpp
 * @brief Eigenfunction velocity and vorticity on a Cartesian grid from a null density.
 */

#include <Eigen/Core>
#include <string>
#include <vector>

#include "stokeseig/geometry.hpp"
#include "stokeseig/potentials.hpp"
#include "stokeseig/quadrature.hpp"

namespace stokeseig {

struct GridSpec {
    double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;
    int nx = 64, ny = 64;
    /// Points closer to the boundary than this many local panel lengths are masked.
    double mask_factor = 0.1;
    void validate() const;
    double hx() const { return (x_max - x_min) / (nx - 1); }
    double hy() const { return (y_max - y_min) / (ny - 1); }
};

enum class GridMask : int { outside = 0, interior = 1, near_boundary = 2 };

/// Row-major grid (index iy * nx + ix). Masked entries hold NaN.
struct EigenfieldGrid {
    GridSpec grid;
    std::vector<Vec2> points;
    std::vector<GridMask> mask;
    std::vector<Eigen::Vector2cd> velocity;
    std::vector<cdouble> vorticity;
    cdouble scale{1.0, 0.0};  ///< factor applied so that the largest |vorticity| is 1 and real
    double masked_fraction() const;
};

/// Velocity of the layer representation of the eigenfunction: D mu, or (D + i eta S) mu.
std::vector<Eigen::Vector2cd> eigen_velocity(const KernelContext& ctx, const BoundaryPanels& panels,
                                             const Eigen::VectorXcd& density, const std::vector<Vec2>& targets,
                                             const QuadratureOptions& opt = {});

/// Mask by winding number and distance to the nearest node, velocity at interior points,
/// vorticity d1 u2 - d2 u1 by second-order grid differences (one-sided next to masked points).
/// Throws DomainError if no grid point is interior.
EigenfieldGrid eval_eigenfield(const KernelContext& ctx, const BoundaryPanels& panels,
                               const Eigen::VectorXcd& density, const GridSpec& grid,
                               const QuadratureOptions& opt = {});

/// CSV with header x,y,mask,u1,u2,omega (real parts after normalization).
std::string eigenfield_csv(const EigenfieldGrid& g);

}  // namespace stokeseig
