#pragma once

/**
 * @file geometry.hpp
 * @brief Closed boundary curves, 16-point Gauss-Legendre panelization and
 * built-in domain generators.
 *
 * Every component is traversed with the fluid domain on its left, so the
 * right-hand normal nu = (tau_y, -tau_x) points out of the fluid domain on
 * both the outer boundary and on inclusions.
 */

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace stokeseig {

using Vec2 = Eigen::Vector2d;

inline constexpr int kPanelOrder = 16;

enum class Orientation { outer, inclusion };

/// Closed C2 curve x(t), t in [0, 2 pi), with analytic derivative.
struct CurveComponent {
    std::function<Vec2(double)> x;
    std::function<Vec2(double)> dx;
    Orientation orientation = Orientation::outer;
    /// Optional initial panel breakpoints in [0, 2 pi); empty means one panel.
    std::vector<double> initial_breaks;
    std::string name;
};

struct Panel {
    int component = 0;
    double t0 = 0.0, t1 = 0.0;  ///< parameter interval
    double length = 0.0;        ///< arc length
    int first_node = 0;
    int prev = -1, next = -1;   ///< neighbours along the component
};

/// Panelized boundary. Node n of panel p has global index 16 p + n.
struct BoundaryPanels {
    std::vector<CurveComponent> curves;
    std::vector<Panel> panels;
    Eigen::Matrix2Xd x, nu, tau;
    Eigen::VectorXd weights;  ///< Gauss weight * arc-length density * dt/du
    Eigen::VectorXd speed;    ///< |x'(t)|
    std::vector<int> node_component;
    double total_length = 0.0;

    int num_nodes() const { return static_cast<int>(x.cols()); }
    int num_panels() const { return static_cast<int>(panels.size()); }
    int num_components() const { return static_cast<int>(curves.size()); }
    /// Point on the curve of panel p at local parameter u in [-1, 1].
    Vec2 point(int p, double u) const;
    Vec2 derivative(int p, double u) const;  ///< dx/du
};

struct PanelizeOptions {
    double max_panel_len = 1.0;
    double min_panel_len = 1e-4;
    /// Tolerance on the 16-node interpolants of x(t) and x'(t) * (dt/du), and on the panel length.
    double resolve_tol = 1e-12;
};

/// Arc length of x on [t0, t1] by adaptive Gauss-Legendre.
double arc_length(const CurveComponent& c, double t0, double t1);

/// Split breakpoints (cyclic) until adjacent panels differ in arc length by at most 2.
std::vector<double> level_restrict(const CurveComponent& c, std::vector<double> breaks);

BoundaryPanels panelize(const std::vector<CurveComponent>& curves, const PanelizeOptions& opt);

/// Circle of radius r about c; counterclockwise for outer, clockwise for inclusion.
CurveComponent make_circle(Vec2 center, double radius, Orientation orient, int n_panels = 0);

/// Outer panel count that balances panel lengths: ceil(r2/r1 * n_inner) + 1.
int balanced_outer_panels(double r1, double r2, int n_inner);

/// Annulus r1 < |x| < r2. n_outer <= 0 selects balanced_outer_panels.
std::vector<CurveComponent> make_annulus(double r1, double r2, int n_inner, int n_outer = 0);

/// Polygon (counterclockwise vertices) with corners rounded by Gaussian smoothing
/// of width h of its arc-length parameterization.
CurveComponent make_rounded_polygon(const std::vector<Vec2>& vertices, double h,
                                    Orientation orient = Orientation::outer);

/// Sharp barbell vertices (counterclockwise), all lengths multiplied by scale.
std::vector<Vec2> barbell_vertices(double scale = 1.0);

/// Distance from p to the closed polygon.
double polygon_distance(const std::vector<Vec2>& vertices, const Vec2& p);

std::vector<CurveComponent> make_barbell(double rounding_h, double scale = 1.0);

struct StarfishParams {
    double width = 3.0, height = 2.0, rounding_h = 0.08;
    int nx = 3, ny = 2;
    double r0 = 0.25, amplitude = 0.3;
    int arms = 5;
};

/// Rounded rectangle with an nx-by-ny grid of randomly rotated starfish inclusions.
std::vector<CurveComponent> make_starfish_domain(std::uint64_t seed,
                                                 const StarfishParams& p = StarfishParams{});

/// Curve given by per-panel samples at the 16 Legendre nodes (interpolated).
CurveComponent curve_from_samples(const std::vector<Eigen::Matrix2Xd>& panel_nodes,
                                  Orientation orient);

/// Winding number of the boundary around p (1 inside the fluid domain).
double winding_number(const BoundaryPanels& b, const Vec2& p);

/// Signed area via sum of w (nu . x)/2.
double signed_area(const BoundaryPanels& b);

}  // namespace stokeseig
