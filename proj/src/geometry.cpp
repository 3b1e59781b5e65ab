#include "stokeseig/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "stokeseig/errors.hpp"
#include "stokeseig/quadrature_rules.hpp"

namespace stokeseig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gl_length(const CurveComponent& c, double t0, double t1) {
    const auto& r = gl16();
    const double half = 0.5 * (t1 - t0);
    double sum = 0.0;
    for (int n = 0; n < 16; ++n) {
        sum += r.weights[n] * c.dx(t0 + half * (r.nodes[n] + 1.0)).norm();
    }
    return sum * half;
}

double adaptive_length(const CurveComponent& c, double t0, double t1, double whole, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const double left = gl_length(c, t0, tm);
    const double right = gl_length(c, tm, t1);
    if (std::abs(left + right - whole) <= 1e-15 * std::max(1.0, whole) || depth > 30) {
        return left + right;
    }
    return adaptive_length(c, t0, tm, left, depth + 1) + adaptive_length(c, tm, t1, right, depth + 1);
}

// End parameter of panel i given cyclic breaks.
double panel_end(const std::vector<double>& breaks, std::size_t i) {
    return i + 1 < breaks.size() ? breaks[i + 1] : breaks[0] + kTwoPi;
}

bool panel_resolved(const CurveComponent& c, double t0, double t1, double tol) {
    const auto& r = gl16();
    const double half = 0.5 * (t1 - t0);
    Eigen::Matrix<double, 2, 16> xs, ds;
    double dmax = 0.0, len = 0.0;
    for (int n = 0; n < 16; ++n) {
        const double t = t0 + half * (r.nodes[n] + 1.0);
        xs.col(n) = c.x(t);
        ds.col(n) = c.dx(t) * half;
        dmax = std::max(dmax, ds.col(n).norm());
        len += r.weights[n] * ds.col(n).norm();
    }
    // |x'| can have complex branch points close to the real axis even when x is entire,
    // so the node weights are checked against the halved panel as well.
    const double tm = 0.5 * (t0 + t1);
    if (std::abs(gl_length(c, t0, tm) + gl_length(c, tm, t1) - len) > tol * len) return false;
    if (!(dmax > 0.0)) throw GeometryError("curve '" + c.name + "' is irregular (|x'| = 0)");
    // Test points between the Legendre nodes.
    for (int m = 0; m < 15; ++m) {
        const double u = 0.5 * (r.nodes[m] + r.nodes[m + 1]);
        const auto l = lagrange16(u);
        Vec2 xi = Vec2::Zero(), di = Vec2::Zero();
        for (int n = 0; n < 16; ++n) {
            xi += l[n] * xs.col(n);
            di += l[n] * ds.col(n);
        }
        const double t = t0 + half * (u + 1.0);
        if ((xi - c.x(t)).norm() > tol) return false;
        if ((di - c.dx(t) * half).norm() > tol * dmax) return false;
    }
    return true;
}

std::vector<double> normalized_breaks(const CurveComponent& c) {
    std::vector<double> b;
    for (double t : c.initial_breaks) {
        double v = std::fmod(t, kTwoPi);
        if (v < 0.0) v += kTwoPi;
        b.push_back(v);
    }
    if (b.empty()) b.push_back(0.0);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double std_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

Vec2 BoundaryPanels::point(int p, double u) const {
    const Panel& pn = panels[p];
    return curves[pn.component].x(pn.t0 + 0.5 * (u + 1.0) * (pn.t1 - pn.t0));
}

Vec2 BoundaryPanels::derivative(int p, double u) const {
    const Panel& pn = panels[p];
    const double half = 0.5 * (pn.t1 - pn.t0);
    return curves[pn.component].dx(pn.t0 + half * (u + 1.0)) * half;
}

double arc_length(const CurveComponent& c, double t0, double t1) {
    return adaptive_length(c, t0, t1, gl_length(c, t0, t1), 0);
}

std::vector<double> level_restrict(const CurveComponent& c, std::vector<double> breaks) {
    std::sort(breaks.begin(), breaks.end());
    for (int pass = 0; pass < 200; ++pass) {
        const std::size_t n = breaks.size();
        if (n < 2) return breaks;
        std::vector<double> len(n);
        for (std::size_t i = 0; i < n; ++i) len[i] = arc_length(c, breaks[i], panel_end(breaks, i));
        std::vector<double> added;
        for (std::size_t i = 0; i < n; ++i) {
            const double lp = len[(i + n - 1) % n];
            const double ln = len[(i + 1) % n];
            if (len[i] > 2.0 * lp * (1.0 + 1e-12) || len[i] > 2.0 * ln * (1.0 + 1e-12)) {
                added.push_back(0.5 * (breaks[i] + panel_end(breaks, i)));
            }
        }
        if (added.empty()) return breaks;
        for (double t : added) breaks.push_back(t >= kTwoPi ? t - kTwoPi : t);
        std::sort(breaks.begin(), breaks.end());
    }
    throw GeometryError("level restriction did not terminate on '" + c.name + "'");
}

BoundaryPanels panelize(const std::vector<CurveComponent>& curves, const PanelizeOptions& opt) {
    if (!(opt.max_panel_len > opt.min_panel_len) || !(opt.min_panel_len > 0.0)) {
        throw GeometryError("panelize: need max_panel_len > min_panel_len > 0");
    }
    if (curves.empty()) throw GeometryError("panelize: no curves");
    BoundaryPanels out;
    out.curves = curves;
    const auto& rule = gl16();

    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
        const CurveComponent& c = curves[ci];
        std::vector<double> breaks = normalized_breaks(c);
        for (int pass = 0; pass < 64; ++pass) {
            std::vector<double> added;
            for (std::size_t i = 0; i < breaks.size(); ++i) {
                const double t0 = breaks[i], t1 = panel_end(breaks, i);
                const double len = arc_length(c, t0, t1);
                if (len < 2.0 * opt.min_panel_len) continue;
                if (len > opt.max_panel_len || !panel_resolved(c, t0, t1, opt.resolve_tol)) {
                    added.push_back(0.5 * (t0 + t1));
                }
            }
            // A single panel cannot close a curve with distinct endpoints; always split once.
            if (breaks.size() == 1 && added.empty()) added.push_back(breaks[0] + std::numbers::pi);
            if (added.empty()) break;
            for (double t : added) breaks.push_back(t >= kTwoPi ? t - kTwoPi : t);
            std::sort(breaks.begin(), breaks.end());
            breaks = level_restrict(c, breaks);
        }
        breaks = level_restrict(c, breaks);

        const int first_panel = static_cast<int>(out.panels.size());
        const int np = static_cast<int>(breaks.size());
        for (int i = 0; i < np; ++i) {
            Panel p;
            p.component = ci;
            p.t0 = breaks[i];
            p.t1 = panel_end(breaks, i);
            p.length = arc_length(c, p.t0, p.t1);
            p.prev = first_panel + (i + np - 1) % np;
            p.next = first_panel + (i + 1) % np;
            out.panels.push_back(p);
        }
    }

    const int n_nodes = kPanelOrder * out.num_panels();
    out.x.resize(2, n_nodes);
    out.nu.resize(2, n_nodes);
    out.tau.resize(2, n_nodes);
    out.weights.resize(n_nodes);
    out.speed.resize(n_nodes);
    out.node_component.resize(n_nodes);
    for (int p = 0; p < out.num_panels(); ++p) {
        Panel& pn = out.panels[p];
        pn.first_node = kPanelOrder * p;
        const CurveComponent& c = curves[pn.component];
        const double half = 0.5 * (pn.t1 - pn.t0);
        for (int n = 0; n < kPanelOrder; ++n) {
            const int g = pn.first_node + n;
            const double t = pn.t0 + half * (rule.nodes[n] + 1.0);
            const Vec2 d = c.dx(t);
            const double s = d.norm();
            if (!(s > 0.0)) throw GeometryError("curve '" + c.name + "' is irregular (|x'| = 0)");
            out.x.col(g) = c.x(t);
            out.tau.col(g) = d / s;
            out.nu.col(g) = Vec2(d.y() / s, -d.x() / s);
            out.speed(g) = s;
            out.weights(g) = rule.weights[n] * s * half;
            out.node_component[g] = pn.component;
        }
    }
    out.total_length = out.weights.sum();
    return out;
}

CurveComponent make_circle(Vec2 center, double radius, Orientation orient, int n_panels) {
    if (!(radius > 0.0)) throw GeometryError("circle radius must be positive");
    CurveComponent c;
    const double sgn = orient == Orientation::outer ? 1.0 : -1.0;
    c.x = [=](double t) { return Vec2(center.x() + radius * std::cos(t), center.y() + sgn * radius * std::sin(t)); };
    c.dx = [=](double t) { return Vec2(-radius * std::sin(t), sgn * radius * std::cos(t)); };
    c.orientation = orient;
    c.name = orient == Orientation::outer ? "circle" : "circle_inclusion";
    for (int i = 0; i < n_panels; ++i) c.initial_breaks.push_back(kTwoPi * i / n_panels);
    return c;
}

int balanced_outer_panels(double r1, double r2, int n_inner) {
    // Guard against ceil of a product that is an integer up to rounding (1.7 * 8 = 13.6).
    const double q = r2 / r1 * n_inner;
    return static_cast<int>(std::ceil(q - 1e-12)) + 1;
}

std::vector<CurveComponent> make_annulus(double r1, double r2, int n_inner, int n_outer) {
    if (!(r1 > 0.0) || !(r1 < r2)) throw GeometryError("annulus requires 0 < r1 < r2");
    if (n_inner < 0) throw GeometryError("annulus: negative panel count");
    if (n_inner > 0 && n_outer <= 0) n_outer = balanced_outer_panels(r1, r2, n_inner);
    auto outer = make_circle(Vec2::Zero(), r2, Orientation::outer, n_outer);
    auto inner = make_circle(Vec2::Zero(), r1, Orientation::inclusion, n_inner);
    outer.name = "annulus_outer";
    inner.name = "annulus_inner";
    return {outer, inner};
}

CurveComponent make_rounded_polygon(const std::vector<Vec2>& vertices, double h, Orientation orient) {
    const int m = static_cast<int>(vertices.size());
    if (m < 3) throw GeometryError("polygon needs at least 3 vertices");
    if (!(h > 0.0)) throw GeometryError("rounding width must be positive");
    std::vector<double> s(m + 1, 0.0);
    std::vector<Vec2> dir(m);
    double min_edge = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const Vec2 e = vertices[(i + 1) % m] - vertices[i];
        const double len = e.norm();
        if (!(len > 0.0)) throw GeometryError("polygon has a repeated vertex");
        dir[i] = e / len;
        s[i + 1] = s[i] + len;
        min_edge = std::min(min_edge, len);
    }
    if (h > min_edge / 8.0) throw GeometryError("rounding width too large for the shortest edge");
    const double perim = s[m];
    const double sgn = orient == Orientation::outer ? 1.0 : -1.0;

    struct Data {
        std::vector<Vec2> v, dir, jump;
        std::vector<double> s;
        double perim, h, sgn;
    };
    auto d = std::make_shared<Data>();
    d->v = vertices;
    d->dir = dir;
    d->s = s;
    d->perim = perim;
    d->h = h;
    d->sgn = sgn;
    for (int i = 0; i < m; ++i) d->jump.push_back(dir[i] - dir[(i + m - 1) % m]);

    // Arc length along the counterclockwise polygon for parameter t.
    auto arc = [d](double t) {
        double u = std::fmod(d->sgn * t, kTwoPi);
        if (u < 0.0) u += kTwoPi;
        return u / kTwoPi * d->perim;
    };
    auto wrap = [d](double delta) {
        delta = std::fmod(delta, d->perim);
        if (delta > 0.5 * d->perim) delta -= d->perim;
        if (delta < -0.5 * d->perim) delta += d->perim;
        return delta;
    };
    auto edge_of = [d](double sv) {
        auto it = std::upper_bound(d->s.begin(), d->s.end(), sv);
        int e = static_cast<int>(it - d->s.begin()) - 1;
        return std::clamp(e, 0, static_cast<int>(d->v.size()) - 1);
    };

    CurveComponent c;
    c.x = [d, arc, wrap, edge_of](double t) {
        const double sv = arc(t);
        const int e = edge_of(sv);
        Vec2 p = d->v[e] + d->dir[e] * (sv - d->s[e]);
        for (std::size_t i = 0; i < d->v.size(); ++i) {
            const double z = wrap(sv - d->s[i]) / d->h;
            const double a = std::abs(z);
            if (a > 40.0) continue;
            p += d->h * (std_normal_pdf(a) - a * std_normal_cdf(-a)) * d->jump[i];
        }
        return p;
    };
    c.dx = [d, arc, wrap, edge_of](double t) {
        const double sv = arc(t);
        const int e = edge_of(sv);
        Vec2 g = d->dir[e];
        for (std::size_t i = 0; i < d->v.size(); ++i) {
            const double z = wrap(sv - d->s[i]) / d->h;
            const double a = std::abs(z);
            if (a > 40.0) continue;
            // Edge lookup takes the outgoing direction at z = 0.
            const double sign = z >= 0.0 ? 1.0 : -1.0;
            g -= sign * std_normal_cdf(-a) * d->jump[i];
        }
        return Vec2(g * (d->sgn * d->perim / kTwoPi));
    };
    c.orientation = orient;
    c.name = "rounded_polygon";
    // Start with one panel per edge, breaks at the corners.
    for (int i = 0; i < m; ++i) {
        const double t = kTwoPi * s[i] / perim;
        c.initial_breaks.push_back(sgn > 0.0 ? t : std::fmod(kTwoPi - t, kTwoPi));
    }
    return c;
}

std::vector<Vec2> barbell_vertices(double scale) {
    const std::vector<Vec2> base = {{0, -3},     {6, -3},     {6, -0.5},  {8.5, -0.5},
                                    {8.5, -1.5}, {11.5, -1.5}, {11.5, 1.5}, {8.5, 1.5},
                                    {8.5, 0.5},  {6, 0.5},     {6, 3},     {0, 3}};
    std::vector<Vec2> out;
    for (const auto& v : base) out.push_back(scale * v);
    return out;
}

double polygon_distance(const std::vector<Vec2>& vertices, const Vec2& p) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = vertices[i], b = vertices[(i + 1) % m];
        const Vec2 e = b - a;
        const double t = std::clamp((p - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
        best = std::min(best, (a + t * e - p).norm());
    }
    return best;
}

std::vector<CurveComponent> make_barbell(double rounding_h, double scale) {
    if (!(scale > 0.0)) throw GeometryError("barbell scale must be positive");
    auto c = make_rounded_polygon(barbell_vertices(scale), rounding_h);
    c.name = "barbell";
    return {c};
}

std::vector<CurveComponent> make_starfish_domain(std::uint64_t seed, const StarfishParams& p) {
    if (!(p.width > 0.0 && p.height > 0.0) || p.nx < 1 || p.ny < 1) {
        throw GeometryError("starfish domain: bad box or grid");
    }
    if (!(p.r0 > 0.0) || !(p.amplitude >= 0.0 && p.amplitude < 1.0) || p.arms < 1) {
        throw GeometryError("starfish domain: bad starfish shape");
    }
    const double hw = 0.5 * p.width, hh = 0.5 * p.height;
    std::vector<CurveComponent> out;
    auto outer = make_rounded_polygon({{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}, p.rounding_h);
    outer.name = "box";
    out.push_back(outer);

    std::mt19937_64 gen(seed);
    const double rmax = p.r0 * (1.0 + p.amplitude);
    const double cell_x = p.width / p.nx, cell_y = p.height / p.ny;
    // Keep a margin to the rounded walls and between neighbours.
    const double margin = 2.0 * p.rounding_h;
    if (2.0 * rmax + margin > std::min(cell_x, cell_y)) {
        throw GeometryError("starfish domain: inclusions overlap or touch the outer wall");
    }
    for (int j = 0; j < p.ny; ++j) {
        for (int i = 0; i < p.nx; ++i) {
            const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            const double theta0 = u * kTwoPi / p.arms;
            const Vec2 c(-hw + cell_x * (i + 0.5), -hh + cell_y * (j + 0.5));
            const double r0 = p.r0, a = p.amplitude;
            const int arms = p.arms;
            CurveComponent s;
            // Clockwise traversal: theta = -t.
            s.x = [=](double t) {
                const double th = -t;
                const double r = r0 * (1.0 + a * std::cos(arms * (th - theta0)));
                return Vec2(c.x() + r * std::cos(th), c.y() + r * std::sin(th));
            };
            s.dx = [=](double t) {
                const double th = -t;
                const double r = r0 * (1.0 + a * std::cos(arms * (th - theta0)));
                const double dr = -r0 * a * arms * std::sin(arms * (th - theta0));
                return Vec2(-(dr * std::cos(th) - r * std::sin(th)), -(dr * std::sin(th) + r * std::cos(th)));
            };
            s.orientation = Orientation::inclusion;
            s.name = "starfish_" + std::to_string(j * p.nx + i);
            out.push_back(s);
        }
    }
    return out;
}

CurveComponent curve_from_samples(const std::vector<Eigen::Matrix2Xd>& panel_nodes, Orientation orient) {
    const int np = static_cast<int>(panel_nodes.size());
    if (np < 2) throw GeometryError("panel samples: need at least two panels");
    for (const auto& m : panel_nodes) {
        if (m.cols() != kPanelOrder) throw GeometryError("panel samples: each panel needs 16 nodes");
        if (!m.allFinite()) throw GeometryError("panel samples: non-finite coordinate");
    }
    auto data = std::make_shared<std::vector<Eigen::Matrix2Xd>>(panel_nodes);
    const double dt = kTwoPi / np;
    auto locate = [np, dt](double t, int& p, double& u) {
        double v = std::fmod(t, kTwoPi);
        if (v < 0.0) v += kTwoPi;
        p = std::min(static_cast<int>(v / dt), np - 1);
        u = 2.0 * (v - p * dt) / dt - 1.0;
    };
    CurveComponent c;
    c.x = [data, locate](double t) {
        int p;
        double u;
        locate(t, p, u);
        const auto l = lagrange16(u);
        Vec2 r = Vec2::Zero();
        for (int n = 0; n < kPanelOrder; ++n) r += l[n] * (*data)[p].col(n);
        return r;
    };
    c.dx = [data, locate, dt](double t) {
        int p;
        double u;
        locate(t, p, u);
        const auto l = lagrange16_derivative(u);
        Vec2 r = Vec2::Zero();
        for (int n = 0; n < kPanelOrder; ++n) r += l[n] * (*data)[p].col(n);
        return Vec2(r * (2.0 / dt));
    };
    c.orientation = orient;
    c.name = "samples";
    for (int p = 0; p < np; ++p) c.initial_breaks.push_back(p * dt);
    return c;
}

double winding_number(const BoundaryPanels& b, const Vec2& p) {
    double total = 0.0;
    for (int q = 0; q < b.num_panels(); ++q) {
        const Vec2 a = b.point(q, -1.0), e = b.point(q, 1.0);
        const double dist = std::min((a - p).norm(), (e - p).norm());
        const int samples = dist < 2.0 * b.panels[q].length ? 256 : 24;
        Vec2 prev = a - p;
        for (int m = 1; m <= samples; ++m) {
            const Vec2 cur = b.point(q, -1.0 + 2.0 * m / samples) - p;
            total += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
            prev = cur;
        }
    }
    return total / kTwoPi;
}

double signed_area(const BoundaryPanels& b) {
    double a = 0.0;
    for (int i = 0; i < b.num_nodes(); ++i) a += b.weights(i) * b.nu.col(i).dot(b.x.col(i));
    return 0.5 * a;
}

}  // namespace stokeseig
