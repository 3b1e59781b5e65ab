#include "stokeseig/eigenfield.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "stokeseig/errors.hpp"

namespace stokeseig {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void GridSpec::validate() const {
    if (nx < 3 || ny < 3) throw DomainError("grid needs at least 3 points per direction");
    if (!(x_max > x_min) || !(y_max > y_min)) throw DomainError("grid bounds are empty");
    if (!(mask_factor >= 0.0)) throw DomainError("mask factor must be nonnegative");
}

double EigenfieldGrid::masked_fraction() const {
    if (mask.empty()) return 0.0;
    std::size_t m = 0;
    for (auto v : mask) m += v != GridMask::interior;
    return static_cast<double>(m) / mask.size();
}

std::vector<Eigen::Vector2cd> eigen_velocity(const KernelContext& ctx, const BoundaryPanels& panels,
                                             const Eigen::VectorXcd& density, const std::vector<Vec2>& targets,
                                             const QuadratureOptions& opt) {
    auto u = eval_offsurface(ctx, panels, density, targets, LayerKind::double_layer, opt);
    if (ctx.formulation == Formulation::combined_field) {
        const auto s = eval_offsurface(ctx, panels, density, targets, LayerKind::single, opt);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += cdouble(0.0, ctx.eta) * s[i];
    }
    return u;
}

EigenfieldGrid eval_eigenfield(const KernelContext& ctx, const BoundaryPanels& panels,
                               const Eigen::VectorXcd& density, const GridSpec& grid, const QuadratureOptions& opt) {
    grid.validate();
    EigenfieldGrid g;
    g.grid = grid;
    const int nx = grid.nx, ny = grid.ny, total = nx * ny;
    g.points.resize(total);
    g.mask.assign(total, GridMask::outside);
    std::vector<Vec2> targets;
    std::vector<int> target_index;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const int idx = iy * nx + ix;
            const Vec2 p(grid.x_min + ix * grid.hx(), grid.y_min + iy * grid.hy());
            g.points[idx] = p;
            if (winding_number(panels, p) < 0.5) continue;
            int nearest = 0;
            (panels.x.colwise() - p).colwise().squaredNorm().minCoeff(&nearest);
            const double dist = (panels.x.col(nearest) - p).norm();
            const double local = panels.panels[nearest / kPanelOrder].length;
            if (dist < grid.mask_factor * local) {
                g.mask[idx] = GridMask::near_boundary;
                continue;
            }
            g.mask[idx] = GridMask::interior;
            targets.push_back(p);
            target_index.push_back(idx);
        }
    }
    if (targets.empty()) throw DomainError("eigenfield grid is fully masked");

    const auto u = eigen_velocity(ctx, panels, density, targets, opt);
    const Eigen::Vector2cd nan2(cdouble(kNaN, kNaN), cdouble(kNaN, kNaN));
    g.velocity.assign(total, nan2);
    for (std::size_t t = 0; t < targets.size(); ++t) g.velocity[target_index[t]] = u[t];

    auto ok = [&](int ix, int iy) {
        return ix >= 0 && ix < nx && iy >= 0 && iy < ny && g.mask[iy * nx + ix] == GridMask::interior;
    };
    // Second-order derivative of component c along one axis; false when no stencil fits.
    auto diff = [&](int ix, int iy, int dx, int dy, int c, double h, cdouble& out) {
        auto val = [&](int s) { return g.velocity[(iy + s * dy) * nx + ix + s * dx](c); };
        auto in = [&](int s) { return ok(ix + s * dx, iy + s * dy); };
        if (in(-1) && in(1)) {
            out = (val(1) - val(-1)) / (2.0 * h);
        } else if (in(1) && in(2)) {
            out = (-3.0 * val(0) + 4.0 * val(1) - val(2)) / (2.0 * h);
        } else if (in(-1) && in(-2)) {
            out = (3.0 * val(0) - 4.0 * val(-1) + val(-2)) / (2.0 * h);
        } else {
            return false;
        }
        return true;
    };
    g.vorticity.assign(total, cdouble(kNaN, kNaN));
    double best = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (!ok(ix, iy)) continue;
            cdouble du2dx, du1dy;
            if (!diff(ix, iy, 1, 0, 1, grid.hx(), du2dx) || !diff(ix, iy, 0, 1, 0, grid.hy(), du1dy)) continue;
            const cdouble w = du2dx - du1dy;
            g.vorticity[iy * nx + ix] = w;
            if (std::abs(w) > best) {
                best = std::abs(w);
                g.scale = std::conj(w) / (best * best);
            }
        }
    }
    if (best > 0.0) {
        for (int i = 0; i < total; ++i) {
            if (g.mask[i] != GridMask::interior) continue;
            g.velocity[i] *= g.scale;
            g.vorticity[i] *= g.scale;
        }
    }
    return g;
}

std::string eigenfield_csv(const EigenfieldGrid& g) {
    std::ostringstream os;
    os << "x,y,mask,u1,u2,omega\n";
    char buf[256];
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%d,%.12g,%.12g,%.12g\n", g.points[i].x(), g.points[i].y(),
                      static_cast<int>(g.mask[i]), g.velocity[i](0).real(), g.velocity[i](1).real(),
                      g.vorticity[i].real());
        os << buf;
    }
    return os.str();
}

}  // namespace stokeseig
