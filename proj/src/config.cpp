#include "stokeseig/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include "stokeseig/errors.hpp"

namespace stokeseig {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& obj, const char* key, const std::string& field, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(field, "has the wrong type");
    }
}

void check_known(const json& obj, const std::vector<std::string>& keys, const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
            throw ConfigError(prefix + it.key(), "unknown field");
        }
    }
}

}  // namespace

std::string to_string(Formulation f) { return f == Formulation::double_layer ? "double_layer" : "combined_field"; }

Formulation formulation_from_string(const std::string& s) {
    if (s == "double_layer") return Formulation::double_layer;
    if (s == "combined_field") return Formulation::combined_field;
    throw ConfigError("formulation", "must be double_layer or combined_field");
}

double RunConfig::k_max() const {
    double m = 0.0;
    for (const auto& [a, b] : intervals) m = std::max(m, b);
    return m;
}

double RunConfig::effective_max_panel_len() const {
    if (max_panel_len > 0.0) return max_panel_len;
    const double k = k_max();
    return k > 0.0 ? 2.0 * std::numbers::pi / k : 1.0;
}

KernelContext RunConfig::kernel_context() const {
    KernelContext ctx;
    ctx.k = intervals.empty() ? 1.0 : 0.5 * (intervals.front().first + intervals.front().second);
    ctx.eta = eta;
    ctx.formulation = formulation;
    return ctx;
}

SweepOptions RunConfig::sweep_options() const {
    SweepOptions o;
    o.fit.eps_cheb = eps_cheb;
    o.fit.initial_degree = tolerances.initial_degree;
    o.fit.max_degree = tolerances.max_degree;
    o.post.eps_cheb = eps_cheb;
    o.post.pair_alignment = tolerances.pair_alignment;
    o.post.simple_sigma2 = tolerances.simple_sigma2;
    o.quad.tol = tolerances.quad_tol;
    o.quad.far_factor = tolerances.far_factor;
    o.quad.max_depth = tolerances.max_depth;
    o.system.allow_double_layer_multiply_connected = allow_double_layer_multiply_connected;
    o.refine_threshold = tolerances.refine_threshold;
    return o;
}

void validate(const RunConfig& c) {
    const auto& g = c.geometry;
    static const std::vector<std::string> types{"circle", "annulus", "barbell", "starfish", "panel_file"};
    if (g.type.empty()) throw ConfigError("geometry", "missing geometry block or type");
    if (std::find(types.begin(), types.end(), g.type) == types.end()) {
        throw ConfigError("geometry.type", "unknown geometry '" + g.type + "'");
    }
    if (g.type == "circle" && !(g.radius > 0.0)) throw ConfigError("geometry.radius", "must be positive");
    if (g.type == "annulus" && !(g.r1 > 0.0 && g.r2 > g.r1)) throw ConfigError("geometry.r1", "requires 0 < r1 < r2");
    if (g.n_panels < 0) throw ConfigError("geometry.n_panels", "must be nonnegative");
    if (g.n_outer < 0) throw ConfigError("geometry.n_outer", "must be nonnegative");
    if ((g.type == "barbell" || g.type == "starfish") && !(g.rounding_h > 0.0)) {
        throw ConfigError("geometry.rounding_h", "must be positive");
    }
    if (g.type == "barbell" && !(g.scale > 0.0)) throw ConfigError("geometry.scale", "must be positive");
    if (g.type == "panel_file" && g.path.empty()) throw ConfigError("geometry.path", "required for panel_file");
    if (c.formulation == Formulation::combined_field && !(c.eta > 0.0)) {
        throw ConfigError("eta", "must be positive for combined_field");
    }
    if (!(c.eta >= 0.0)) throw ConfigError("eta", "must be nonnegative");
    if (c.intervals.empty()) throw ConfigError("intervals", "at least one k-interval is required");
    for (const auto& [a, b] : c.intervals) {
        if (!(a > 0.0) || !(b > a)) throw ConfigError("intervals", "each interval needs 0 < a < b");
    }
    if (!(c.eps_cheb > 0.0 && c.eps_cheb < 1.0)) throw ConfigError("eps_cheb", "must lie in (0, 1)");
    const auto& t = c.tolerances;
    if (!(t.quad_tol > 0.0)) throw ConfigError("tolerances.quad_tol", "must be positive");
    if (!(t.panel_resolve_tol > 0.0)) throw ConfigError("tolerances.panel_resolve_tol", "must be positive");
    if (!(t.far_factor > 0.0)) throw ConfigError("tolerances.far_factor", "must be positive");
    if (t.max_depth < 1) throw ConfigError("tolerances.max_depth", "must be at least 1");
    if (t.initial_degree < 2) throw ConfigError("tolerances.initial_degree", "must be at least 2");
    if (t.max_degree < t.initial_degree) throw ConfigError("tolerances.max_degree", "below initial_degree");
    if (!(c.max_panel_len >= 0.0)) throw ConfigError("max_panel_len", "must be nonnegative");
    if (c.threads < 0) throw ConfigError("threads", "must be nonnegative");
    if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    check_known(j, {"geometry", "formulation", "allow_double_layer_multiply_connected", "eta", "intervals", "eps_cheb",
                    "tolerances", "max_panel_len", "output_dir", "threads", "seed"},
                "");
    RunConfig c;
    if (!j.contains("geometry") || !j.at("geometry").is_object()) {
        throw ConfigError("geometry", "missing geometry block");
    }
    const json& g = j.at("geometry");
    check_known(g, {"type", "radius", "r1", "r2", "n_panels", "n_outer", "rounding_h", "scale", "path"}, "geometry.");
    read(g, "type", "geometry.type", c.geometry.type);
    read(g, "radius", "geometry.radius", c.geometry.radius);
    read(g, "r1", "geometry.r1", c.geometry.r1);
    read(g, "r2", "geometry.r2", c.geometry.r2);
    read(g, "n_panels", "geometry.n_panels", c.geometry.n_panels);
    read(g, "n_outer", "geometry.n_outer", c.geometry.n_outer);
    read(g, "rounding_h", "geometry.rounding_h", c.geometry.rounding_h);
    read(g, "scale", "geometry.scale", c.geometry.scale);
    read(g, "path", "geometry.path", c.geometry.path);
    std::string form = to_string(c.formulation);
    read(j, "formulation", "formulation", form);
    c.formulation = formulation_from_string(form);
    read(j, "allow_double_layer_multiply_connected", "allow_double_layer_multiply_connected",
         c.allow_double_layer_multiply_connected);
    read(j, "eta", "eta", c.eta);
    if (j.contains("intervals")) {
        const json& iv = j.at("intervals");
        if (!iv.is_array()) throw ConfigError("intervals", "must be a list of [a, b] pairs");
        for (const auto& p : iv) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw ConfigError("intervals", "must be a list of [a, b] pairs");
            }
            c.intervals.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    read(j, "eps_cheb", "eps_cheb", c.eps_cheb);
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigError("tolerances", "must be an object");
        check_known(t, {"quad_tol", "far_factor", "max_depth", "initial_degree", "max_degree", "pair_alignment",
                        "simple_sigma2", "refine_threshold", "panel_resolve_tol"},
                    "tolerances.");
        auto& o = c.tolerances;
        read(t, "quad_tol", "tolerances.quad_tol", o.quad_tol);
        read(t, "far_factor", "tolerances.far_factor", o.far_factor);
        read(t, "max_depth", "tolerances.max_depth", o.max_depth);
        read(t, "initial_degree", "tolerances.initial_degree", o.initial_degree);
        read(t, "max_degree", "tolerances.max_degree", o.max_degree);
        read(t, "pair_alignment", "tolerances.pair_alignment", o.pair_alignment);
        read(t, "simple_sigma2", "tolerances.simple_sigma2", o.simple_sigma2);
        read(t, "refine_threshold", "tolerances.refine_threshold", o.refine_threshold);
        read(t, "panel_resolve_tol", "tolerances.panel_resolve_tol", o.panel_resolve_tol);
    }
    read(j, "max_panel_len", "max_panel_len", c.max_panel_len);
    read(j, "output_dir", "output_dir", c.output_dir);
    read(j, "threads", "threads", c.threads);
    read(j, "seed", "seed", c.seed);
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    json g{{"type", c.geometry.type}};
    const auto& s = c.geometry;
    if (s.type == "circle") {
        g["radius"] = s.radius;
        g["n_panels"] = s.n_panels;
    } else if (s.type == "annulus") {
        g["r1"] = s.r1;
        g["r2"] = s.r2;
        g["n_panels"] = s.n_panels;
        g["n_outer"] = s.n_outer;
    } else if (s.type == "barbell") {
        g["rounding_h"] = s.rounding_h;
        g["scale"] = s.scale;
    } else if (s.type == "starfish") {
        g["rounding_h"] = s.rounding_h;
    } else if (s.type == "panel_file") {
        g["path"] = s.path;
    }
    json iv = json::array();
    for (const auto& [a, b] : c.intervals) iv.push_back({a, b});
    const auto& t = c.tolerances;
    return json{{"geometry", g},
                {"formulation", to_string(c.formulation)},
                {"allow_double_layer_multiply_connected", c.allow_double_layer_multiply_connected},
                {"eta", c.eta},
                {"intervals", iv},
                {"eps_cheb", c.eps_cheb},
                {"tolerances",
                 {{"quad_tol", t.quad_tol},
                  {"far_factor", t.far_factor},
                  {"max_depth", t.max_depth},
                  {"initial_degree", t.initial_degree},
                  {"max_degree", t.max_degree},
                  {"pair_alignment", t.pair_alignment},
                  {"simple_sigma2", t.simple_sigma2},
                  {"refine_threshold", t.refine_threshold},
                  {"panel_resolve_tol", t.panel_resolve_tol}}},
                {"max_panel_len", c.max_panel_len},
                {"output_dir", c.output_dir},
                {"threads", c.threads},
                {"seed", c.seed}};
}

std::string resolve_output_dir(const RunConfig& c) {
    const char* env = std::getenv(kOutputDirEnv);
    return env != nullptr && *env != '\0' ? std::string(env) : c.output_dir;
}

std::vector<CurveComponent> read_panel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("geometry.path", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("geometry.path", std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("components") || !j["components"].is_array() || j["components"].empty()) {
        throw ConfigError("geometry.path", "panel file needs a nonempty components list");
    }
    std::vector<CurveComponent> out;
    try {
        for (const auto& comp : j["components"]) {
            const std::string o = comp.value("orientation", "outer");
            if (o != "outer" && o != "inclusion") throw ConfigError("geometry.path", "bad orientation '" + o + "'");
            std::vector<Eigen::Matrix2Xd> panels;
            for (const auto& p : comp.at("panels")) {
                Eigen::Matrix2Xd m(2, p.size());
                for (std::size_t n = 0; n < p.size(); ++n) {
                    m(0, n) = p[n].at(0).get<double>();
                    m(1, n) = p[n].at(1).get<double>();
                }
                panels.push_back(m);
            }
            out.push_back(curve_from_samples(panels, o == "outer" ? Orientation::outer : Orientation::inclusion));
        }
    } catch (const json::exception& e) {
        throw ConfigError("geometry.path", std::string("malformed panel file: ") + e.what());
    } catch (const GeometryError& e) {
        throw ConfigError("geometry.path", e.what());
    }
    return out;
}

std::vector<CurveComponent> build_curves(const GeometrySpec& g, std::uint64_t seed) {
    if (g.type == "circle") return {make_circle(Vec2::Zero(), g.radius, Orientation::outer, g.n_panels)};
    if (g.type == "annulus") return make_annulus(g.r1, g.r2, g.n_panels, g.n_outer);
    if (g.type == "barbell") return make_barbell(g.rounding_h, g.scale);
    if (g.type == "starfish") {
        StarfishParams p;
        p.rounding_h = g.rounding_h;
        return make_starfish_domain(seed, p);
    }
    if (g.type == "panel_file") return read_panel_file(g.path);
    throw ConfigError("geometry.type", "unknown geometry '" + g.type + "'");
}

BoundaryPanels build_panels(const RunConfig& c) {
    PanelizeOptions po;
    po.max_panel_len = c.effective_max_panel_len();
    po.resolve_tol = c.tolerances.panel_resolve_tol;
    // Explicit panel counts are honoured exactly.
    if ((c.geometry.type == "annulus" || c.geometry.type == "circle") && c.geometry.n_panels > 0) {
        po.max_panel_len = std::max(po.max_panel_len, 1e3);
    }
    return panelize(build_curves(c.geometry, c.seed), po);
}

}  // namespace stokeseig
