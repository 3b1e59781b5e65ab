#include "stokeseig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stokeseig/errors.hpp"
#include "stokeseig/parallel.hpp"
#include "stokeseig/quadrature_rules.hpp"

namespace stokeseig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Kernels at separation d = x - y from one radial evaluation: Stokeslet, double layer
// (source normal nu) and single-layer traction (target normal nu_x).
struct KernelSet {
    Kernel2x2 S, D, T;
};

void kernel_set(cdouble k, const Vec2& d, const Vec2& nu, const Vec2& nu_x, const LayerRequest& want,
                KernelSet& out) {
    const double r2 = d.squaredNorm();
    const ChainCoefficients c = chain_coefficients(k, std::sqrt(r2));
    if (want.single) {
        const cdouble diag = c.A - c.lap;
        out.S(0, 0) = diag + c.B * (d(0) * d(0));
        out.S(1, 1) = diag + c.B * (d(1) * d(1));
        out.S(0, 1) = out.S(1, 0) = c.B * (d(0) * d(1));
    }
    const double inv = 1.0 / (kTwoPi * r2);
    // (T n)^T with x-derivatives; the double layer is its negative.
    auto contract = [&](const Vec2& n, Kernel2x2& K) {
        const double dn = d.dot(n);
        const cdouble cdn = c.C * dn;
        const cdouble diag = 2.0 * c.B * dn - c.e * dn;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                cdouble v = -n(j) * d(i) * inv - n(i) * c.e * d(j) +
                            2.0 * (cdn * (d(i) * d(j)) + c.B * (n(j) * d(i) + n(i) * d(j)));
                if (i == j) v += diag;
                K(i, j) = v;
            }
        }
    };
    if (want.double_layer) {
        contract(nu, out.D);
        out.D = -out.D;
    }
    if (want.traction) {
        contract(nu_x, out.T);
        out.T.transposeInPlace();
    }
}

constexpr LayerRequest kAllLayers{true, true, true};
constexpr int kBlockEntries = 12;  // S, D, T entries per basis function

// Integral of dx/du over [u0, u1] on panel p.
Vec2 panel_increment(const BoundaryPanels& b, int p, double u0, double u1) {
    const auto& r = gl16();
    const double half = 0.5 * (u1 - u0);
    Vec2 sum = Vec2::Zero();
    for (int n = 0; n < 16; ++n) sum += r.weights[n] * b.derivative(p, u0 + half * (r.nodes[n] + 1.0));
    return sum * half;
}

struct Piece {
    double a, b;
    int sing;  // -1: singular at a, +1: singular at b, 0: regular
};

using BlockVec = Eigen::Matrix<cdouble, Eigen::Dynamic, 1>;

class BlockIntegrator {
  public:
    BlockIntegrator(const BoundaryPanels& panels, int panel, int target, cdouble k, const QuadratureOptions& opt)
        : panels_(panels),
          panel_(panel),
          target_panel_(target / kPanelOrder),
          target_u_(gl16().nodes[target % kPanelOrder]),
          x_(panels.x.col(target)),
          nu_x_(panels.nu.col(target)),
          k_(k),
          opt_(opt) {}

    std::vector<PlanPoint> run(const std::vector<Piece>& roots) const {
        std::vector<BlockVec> est;
        double scale = 1e-300;
        for (const auto& pc : roots) {
            const auto pts = points(pc);
            est.push_back(integrate(pts));
            scale = std::max(scale, magnitude(pts));
        }
        std::vector<PlanPoint> out;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            refine(roots[i], est[i], scale, std::numeric_limits<double>::infinity(), 0, out);
        }
        return out;
    }

  private:
    static constexpr double kNoiseFloor = 1e-11;

    std::vector<PlanPoint> points(const Piece& pc) const {
        std::vector<PlanPoint> out;
        const double h = pc.b - pc.a;
        auto add = [&](double u, double wt) {
            PlanPoint q;
            q.d = boundary_chord(panels_, target_panel_, target_u_, panel_, u);
            const Vec2 dy = panels_.derivative(panel_, u);
            const double s = dy.norm();
            q.nu = Vec2(dy.y() / s, -dy.x() / s);
            q.w = wt * s;
            q.basis = lagrange16(u);
            out.push_back(q);
        };
        if (pc.sing == 0) {
            const auto& r = gl16();
            for (int n = 0; n < 16; ++n) add(0.5 * (pc.a + pc.b) + 0.5 * h * r.nodes[n], 0.5 * h * r.weights[n]);
        } else {
            const auto& r = log_rule();
            for (std::size_t n = 0; n < r.nodes.size(); ++n) {
                const double u = pc.sing < 0 ? pc.a + h * r.nodes[n] : pc.b - h * r.nodes[n];
                add(u, h * r.weights[n]);
            }
        }
        return out;
    }

    BlockVec integrate(const std::vector<PlanPoint>& pts) const {
        BlockVec v = BlockVec::Zero(16 * kBlockEntries);
        KernelSet ks;
        for (const auto& q : pts) {
            kernel_set(k_, q.d, q.nu, nu_x_, kAllLayers, ks);
            for (int n = 0; n < 16; ++n) {
                const double f = q.w * q.basis[n];
                cdouble* out = v.data() + kBlockEntries * n;
                for (int e = 0; e < 4; ++e) {
                    out[e] += f * ks.S(e / 2, e % 2);
                    out[4 + e] += f * ks.D(e / 2, e % 2);
                    out[8 + e] += f * ks.T(e / 2, e % 2);
                }
            }
        }
        return v;
    }

    // Largest entry of the integral of |integrand|.
    double magnitude(const std::vector<PlanPoint>& pts) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(16 * kBlockEntries);
        KernelSet ks;
        for (const auto& q : pts) {
            kernel_set(k_, q.d, q.nu, nu_x_, kAllLayers, ks);
            for (int n = 0; n < 16; ++n) {
                const double f = std::abs(q.w * q.basis[n]);
                for (int e = 0; e < 4; ++e) {
                    v(kBlockEntries * n + e) += f * std::abs(ks.S(e / 2, e % 2));
                    v(kBlockEntries * n + 4 + e) += f * std::abs(ks.D(e / 2, e % 2));
                    v(kBlockEntries * n + 8 + e) += f * std::abs(ks.T(e / 2, e % 2));
                }
            }
        }
        return v.maxCoeff();
    }

    bool geometric_ok(const Piece& pc) const {
        // Regular pieces of the target's own panel are split off a singular piece and sit
        // 1.5 lengths away by construction; the check would only add rounding noise.
        if (pc.sing != 0 || panel_ == target_panel_) return true;
        const Vec2 ya = panels_.point(panel_, pc.a), yb = panels_.point(panel_, pc.b);
        const Vec2 yc = panels_.point(panel_, 0.5 * (pc.a + pc.b));
        const double len = (yc - ya).norm() + (yb - yc).norm();
        return (x_ - yc).norm() >= opt_.far_factor * len;
    }

    void refine(const Piece& pc, const BlockVec& est, double scale, double parent_err, int depth,
                std::vector<PlanPoint>& out) const {
        if (depth > opt_.max_depth) {
            throw QuadratureError("adaptive quadrature exceeded depth " + std::to_string(opt_.max_depth) +
                                      " on panel " + std::to_string(panel_),
                                  panel_);
        }
        const double m = 0.5 * (pc.a + pc.b);
        const Piece left{pc.a, m, pc.sing < 0 ? -1 : 0};
        const Piece right{m, pc.b, pc.sing > 0 ? 1 : 0};
        const auto pl = points(left), pr = points(right);
        const BlockVec el = integrate(pl), er = integrate(pr);
        const double err = (el + er - est).cwiseAbs().maxCoeff();
        bool accept = err <= opt_.tol * scale;
        // Pieces touching the target hit a rounding floor from cancelling 1/r terms;
        // stop once halving no longer reduces the error.
        if (!accept && pc.sing != 0 && err <= kNoiseFloor * scale && err > 0.5 * parent_err) accept = true;
        if (accept && geometric_ok(left) && geometric_ok(right)) {
            out.insert(out.end(), pl.begin(), pl.end());
            out.insert(out.end(), pr.begin(), pr.end());
            return;
        }
        refine(left, el, scale, err, depth + 1, out);
        refine(right, er, scale, err, depth + 1, out);
    }

    const BoundaryPanels& panels_;
    int panel_;
    int target_panel_;
    double target_u_;
    Vec2 x_, nu_x_;
    cdouble k_;
    QuadratureOptions opt_;
};

double center_distance(const BoundaryPanels& panels, int p, const Vec2& x) {
    return (panels.point(p, 0.0) - x).norm();
}

}  // namespace

Vec2 boundary_chord(const BoundaryPanels& b, int px, double ux, int py, double uy) {
    if (px == py) return panel_increment(b, px, uy, ux);
    if (b.panels[px].component == b.panels[py].component) {
        constexpr int kMaxWalk = 4;
        Vec2 fwd = panel_increment(b, py, uy, 1.0);
        int p = b.panels[py].next;
        for (int step = 0; step < kMaxWalk && p != py; ++step, p = b.panels[p].next) {
            if (p == px) return fwd + panel_increment(b, px, -1.0, ux);
            fwd += panel_increment(b, p, -1.0, 1.0);
        }
        Vec2 bwd = panel_increment(b, py, -1.0, uy);
        p = b.panels[py].prev;
        for (int step = 0; step < kMaxWalk && p != py; ++step, p = b.panels[p].prev) {
            if (p == px) return -(bwd + panel_increment(b, px, ux, 1.0));
            bwd += panel_increment(b, p, -1.0, 1.0);
        }
    }
    return b.point(px, ux) - b.point(py, uy);
}

std::size_t QuadraturePlan::num_points() const {
    std::size_t n = 0;
    for (const auto& row : near) {
        for (const auto& b : row) n += b.points.size();
    }
    return n;
}

QuadraturePlan make_plan(const BoundaryPanels& panels, cdouble plan_k, const QuadratureOptions& opt) {
    if (plan_k == 0.0) throw DomainError("make_plan: k must be nonzero");
    QuadraturePlan plan;
    plan.plan_k = plan_k;
    plan.options = opt;
    const int n = panels.num_nodes();
    plan.near.resize(n);
    const auto& rule = gl16();
    parallel_for(n, [&](int i) {
        const Vec2 x = panels.x.col(i);
        const int own = i / kPanelOrder;
        std::vector<NearBlock> blocks;
        for (int p = 0; p < panels.num_panels(); ++p) {
            std::vector<Piece> roots;
            if (p == own) {
                const double ul = rule.nodes[i % kPanelOrder];
                roots = {{-1.0, ul, 1}, {ul, 1.0, -1}};
            } else if (center_distance(panels, p, x) < opt.far_factor * panels.panels[p].length) {
                roots = {{-1.0, 1.0, 0}};
            } else {
                continue;
            }
            BlockIntegrator integ(panels, p, i, plan_k, opt);
            blocks.push_back({p, integ.run(roots)});
        }
        plan.near[i] = std::move(blocks);
    });
    return plan;
}

LayerMatrices assemble_layers(cdouble k, const BoundaryPanels& panels, const QuadraturePlan& plan,
                              const LayerRequest& request) {
    if (k == 0.0) throw DomainError("assemble: k must be nonzero");
    const int n = panels.num_nodes();
    if (static_cast<int>(plan.near.size()) != n) throw DomainError("assemble: plan does not match panels");
    LayerMatrices out;
    if (request.single) out.S = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    if (request.double_layer) out.D = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    if (request.traction) out.T = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    parallel_for(n, [&](int i) {
        const Vec2 x = panels.x.col(i);
        const Vec2 nu_x = panels.nu.col(i);
        std::vector<char> is_near(panels.num_panels(), 0);
        for (const auto& b : plan.near[i]) is_near[b.panel] = 1;
        KernelSet ks;
        auto add = [&](int j, double f) {
            if (request.single) out.S.block<2, 2>(2 * i, 2 * j) += f * ks.S;
            if (request.double_layer) out.D.block<2, 2>(2 * i, 2 * j) += f * ks.D;
            if (request.traction) out.T.block<2, 2>(2 * i, 2 * j) += f * ks.T;
        };
        for (int p = 0; p < panels.num_panels(); ++p) {
            if (is_near[p]) continue;
            for (int m = 0; m < kPanelOrder; ++m) {
                const int j = kPanelOrder * p + m;
                kernel_set(k, x - panels.x.col(j), panels.nu.col(j), nu_x, request, ks);
                add(j, panels.weights(j));
            }
        }
        for (const auto& b : plan.near[i]) {
            const int base = kPanelOrder * b.panel;
            for (const auto& q : b.points) {
                kernel_set(k, q.d, q.nu, nu_x, request, ks);
                for (int m = 0; m < kPanelOrder; ++m) add(base + m, q.w * q.basis[m]);
            }
        }
    });
    return out;
}

Eigen::MatrixXcd assemble_layer_matrix(const KernelContext& ctx, const BoundaryPanels& panels, LayerKind which,
                                       const QuadratureOptions& opt) {
    ctx.validate();
    const auto plan = make_plan(panels, ctx.k, opt);
    LayerRequest req;
    req.single = which == LayerKind::single;
    req.double_layer = which == LayerKind::double_layer;
    req.traction = which == LayerKind::traction;
    auto m = assemble_layers(ctx.k, panels, plan, req);
    if (req.single) return m.S;
    return req.double_layer ? m.D : m.T;
}

namespace {

struct OffsurfaceWork {
    const BoundaryPanels& panels;
    const Eigen::VectorXcd& mu;
    cdouble k;
    LayerRequest want;
    double far_factor;
};

Eigen::Vector2cd apply_kernel(const OffsurfaceWork& w, const KernelSet& ks, const Eigen::Vector2cd& dens) {
    return (w.want.single ? ks.S : ks.D) * dens;
}

Eigen::Vector2cd piece_value(const OffsurfaceWork& w, int p, const Vec2& x, double a, double b) {
    const auto& r = gl16();
    const double h = b - a;
    const int base = kPanelOrder * p;
    Eigen::Vector2cd sum = Eigen::Vector2cd::Zero();
    KernelSet ks;
    for (int n = 0; n < 16; ++n) {
        const double u = 0.5 * (a + b) + 0.5 * h * r.nodes[n];
        const Vec2 dy = w.panels.derivative(p, u);
        const double s = dy.norm();
        const Vec2 nu(dy.y() / s, -dy.x() / s);
        const auto l = lagrange16(u);
        Eigen::Vector2cd dens = Eigen::Vector2cd::Zero();
        for (int m = 0; m < kPanelOrder; ++m) dens += l[m] * w.mu.segment<2>(2 * (base + m));
        kernel_set(w.k, x - w.panels.point(p, u), nu, nu, w.want, ks);
        sum += 0.5 * h * r.weights[n] * s * apply_kernel(w, ks, dens);
    }
    return sum;
}

Eigen::Vector2cd adaptive_panel(const OffsurfaceWork& w, int p, const Vec2& x, double a, double b, int depth) {
    const Vec2 ya = w.panels.point(p, a), yb = w.panels.point(p, b);
    const Vec2 yc = w.panels.point(p, 0.5 * (a + b));
    const double len = (yc - ya).norm() + (yb - yc).norm();
    const double dist = (x - yc).norm();
    if (dist >= w.far_factor * len) return piece_value(w, p, x, a, b);
    if (depth > 52 || dist == 0.0) throw DomainError("eval_offsurface: target lies on the boundary");
    const double m = 0.5 * (a + b);
    return adaptive_panel(w, p, x, a, m, depth + 1) + adaptive_panel(w, p, x, m, b, depth + 1);
}

}  // namespace

std::vector<Eigen::Vector2cd> eval_offsurface(const KernelContext& ctx, const BoundaryPanels& panels,
                                              const Eigen::VectorXcd& mu, const std::vector<Vec2>& targets,
                                              LayerKind which, const QuadratureOptions& opt) {
    ctx.validate();
    if (which == LayerKind::traction) throw DomainError("eval_offsurface: traction is an on-surface operator");
    if (mu.size() != 2 * panels.num_nodes()) throw DomainError("eval_offsurface: density size mismatch");
    LayerRequest want;
    want.single = which == LayerKind::single;
    want.double_layer = which == LayerKind::double_layer;
    OffsurfaceWork w{panels, mu, ctx.k, want, std::max(opt.far_factor, 2.0)};
    std::vector<Eigen::Vector2cd> out(targets.size());
    parallel_for(static_cast<int>(targets.size()), [&](int t) {
        const Vec2 x = targets[t];
        Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
        KernelSet ks;
        for (int p = 0; p < panels.num_panels(); ++p) {
            if (center_distance(panels, p, x) < 5.0 * panels.panels[p].length) {
                v += adaptive_panel(w, p, x, -1.0, 1.0, 0);
                continue;
            }
            for (int m = 0; m < kPanelOrder; ++m) {
                const int j = kPanelOrder * p + m;
                kernel_set(ctx.k, x - panels.x.col(j), panels.nu.col(j), panels.nu.col(j), want, ks);
                v += panels.weights(j) * apply_kernel(w, ks, mu.segment<2>(2 * j));
            }
        }
        out[t] = v;
    });
    return out;
}

}  // namespace stokeseig
