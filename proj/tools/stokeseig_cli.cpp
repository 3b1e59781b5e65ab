// Command-line front end: sweep, reference, eigenfield, panels.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stokeseig/config.hpp"
#include "stokeseig/detsweep.hpp"
#include "stokeseig/eigenfield.hpp"
#include "stokeseig/errors.hpp"
#include "stokeseig/parallel.hpp"
#include "stokeseig/reference.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stokeseig;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitFit = 2;
constexpr int kExitRuntime = 3;

json complex_json(cdouble z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

json report_json(const EigenReport& r) {
    return json{{"k_root", r.k_root},
                {"k_cheb", complex_json(r.k_cheb)},
                {"status", to_string(r.status)},
                {"sigma_min", r.sigma_min},
                {"sigma_2", r.sigma_2},
                {"error_estimate", r.error_estimate},
                {"interval", r.interval},
                {"double_root_candidate", r.double_root_candidate},
                {"note", r.note},
                {"null_density", vector_json(r.null_density)}};
}

json interval_json(const IntervalDiagnostics& d) {
    const auto& f = d.fit;
    json samples = json::array();
    for (std::size_t j = 0; j < f.k_samples.size(); ++j) {
        samples.push_back({{"k", f.k_samples[j]},
                           {"log_abs_det", f.raw[j].log_abs},
                           {"phase", complex_json(f.raw[j].phase)},
                           {"normalized", complex_json(f.raw[j].value(f.log_scale))}});
    }
    json roots = json::array();
    for (const auto& r : d.raw_roots) roots.push_back(complex_json(r));
    return json{{"id", d.id},
                {"a", f.a},
                {"b", f.b},
                {"degree", f.degree},
                {"trailing_ratio", f.trailing_ratio},
                {"converged", f.converged},
                {"recommend_split", f.recommend_split},
                {"fit_failed", d.fit_failed},
                {"needs_refinement", d.needs_refinement},
                {"max_error_estimate", d.max_error_estimate},
                {"plan_points", d.plan_points},
                {"log_scale", f.log_scale},
                {"coefficients", vector_json(f.coeffs)},
                {"samples", samples},
                {"raw_roots", roots}};
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

int cmd_sweep(const std::string& config_path) {
    const RunConfig cfg = load_config(config_path);
    set_num_threads(cfg.threads);
    const BoundaryPanels panels = build_panels(cfg);
    const SweepResult res = sweep(cfg.kernel_context(), panels, cfg.intervals, cfg.sweep_options());

    const fs::path dir = resolve_output_dir(cfg);
    fs::create_directories(dir / "intervals");
    json roots = json::array();
    for (const auto& r : res.reports) roots.push_back(report_json(r));
    write_file(dir / "roots.json", json{{"config", to_json(cfg)},
                                        {"num_nodes", panels.num_nodes()},
                                        {"num_panels", panels.num_panels()},
                                        {"roots", roots}}
                                       .dump(2) +
                                       "\n");
    for (const auto& d : res.intervals) {
        char name[32];
        std::snprintf(name, sizeof name, "%03d.json", d.id);
        write_file(dir / "intervals" / name, interval_json(d).dump(2) + "\n");
    }
    std::string csv = "index,k_root,status,sigma_min,sigma_2,error_estimate,interval,double_root_candidate\n";
    char line[256];
    for (std::size_t i = 0; i < res.reports.size(); ++i) {
        const auto& r = res.reports[i];
        std::snprintf(line, sizeof line, "%zu,%.15g,%s,%.6e,%.6e,%.6e,%d,%d\n", i, r.k_root,
                      to_string(r.status).c_str(), r.sigma_min, r.sigma_2, r.error_estimate, r.interval,
                      r.double_root_candidate ? 1 : 0);
        csv += line;
    }
    write_file(dir / "summary.csv", csv);

    const auto acc = res.accepted();
    std::printf("%zu accepted roots (%zu total) written to %s\n", acc.size(), res.reports.size(),
                dir.string().c_str());
    for (const auto& r : acc) std::printf("  k = %.15f  sigma_min = %.3e  err = %.1e\n", r.k_root, r.sigma_min,
                                          r.error_estimate);
    if (res.any_fit_failed()) {
        std::fprintf(stderr, "error: Chebyshev fit did not converge on at least one interval; split it\n");
        return kExitFit;
    }
    return 0;
}

int cmd_reference(const std::string& kind, double r1, double r2, double k_min, double k_max) {
    TranscendentalRoots roots;
    if (kind == "annulus") {
        roots = annulus_dirichlet_roots(r1, r2, k_min, k_max);
    } else if (kind == "disk_neumann") {
        roots = disk_neumann_roots(k_min, k_max);
    } else {
        throw ConfigError("kind", "must be annulus or disk_neumann");
    }
    std::printf("index,k,residual\n");
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        std::printf("%zu,%.16g,%.3e\n", i, roots.roots[i], roots.residuals[i]);
    }
    return 0;
}

int cmd_eigenfield(const std::string& config_path, const std::string& roots_path, int index, GridSpec grid,
                   bool auto_bounds) {
    const RunConfig cfg = load_config(config_path);
    set_num_threads(cfg.threads);
    std::ifstream in(roots_path);
    if (!in) throw ConfigError("roots", "cannot open " + roots_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("roots", std::string("invalid JSON: ") + e.what());
    }
    std::vector<json> accepted;
    for (const auto& r : j.at("roots")) {
        if (r.at("status") == "accepted") accepted.push_back(r);
    }
    if (index < 0 || index >= static_cast<int>(accepted.size())) {
        throw ConfigError("index", "out of range (" + std::to_string(accepted.size()) + " accepted roots)");
    }
    const json& rep = accepted[index];
    const BoundaryPanels panels = build_panels(cfg);
    const auto& dens = rep.at("null_density");
    if (static_cast<int>(dens.size()) != 2 * panels.num_nodes()) {
        throw ConfigError("roots", "null density does not match the configured geometry");
    }
    Eigen::VectorXcd mu(dens.size());
    for (std::size_t i = 0; i < dens.size(); ++i) mu(i) = cdouble(dens[i][0].get<double>(), dens[i][1].get<double>());
    KernelContext ctx = cfg.kernel_context();
    ctx.k = rep.at("k_root").get<double>();
    if (auto_bounds) {
        grid.x_min = panels.x.row(0).minCoeff();
        grid.x_max = panels.x.row(0).maxCoeff();
        grid.y_min = panels.x.row(1).minCoeff();
        grid.y_max = panels.x.row(1).maxCoeff();
    }
    QuadratureOptions qopt;
    qopt.far_factor = cfg.tolerances.far_factor;
    const EigenfieldGrid g = eval_eigenfield(ctx, panels, mu, grid, qopt);

    const fs::path dir = resolve_output_dir(cfg);
    fs::create_directories(dir);
    const std::string stem = "eigenfield_" + std::to_string(index);
    write_file(dir / (stem + ".csv"), eigenfield_csv(g));
    double max_imag = 0.0;
    for (std::size_t i = 0; i < g.mask.size(); ++i) {
        if (g.mask[i] == GridMask::interior && std::isfinite(g.vorticity[i].imag())) {
            max_imag = std::max(max_imag, std::abs(g.vorticity[i].imag()));
        }
    }
    const json meta{{"k_root", ctx.k.real()},
                    {"index", index},
                    {"formulation", to_string(ctx.formulation)},
                    {"nx", grid.nx},
                    {"ny", grid.ny},
                    {"bounds", {grid.x_min, grid.x_max, grid.y_min, grid.y_max}},
                    {"mask_factor", grid.mask_factor},
                    {"masked_fraction", g.masked_fraction()},
                    {"normalization", complex_json(g.scale)},
                    {"max_imag_vorticity", max_imag}};
    write_file(dir / (stem + ".json"), meta.dump(2) + "\n");
    std::printf("wrote %s (%d x %d, masked fraction %.3f)\n", (dir / (stem + ".csv")).string().c_str(), grid.nx,
                grid.ny, g.masked_fraction());
    return 0;
}

int cmd_panels(const std::string& config_path) {
    const RunConfig cfg = load_config(config_path);
    const BoundaryPanels panels = build_panels(cfg);
    json comps = json::array();
    for (int c = 0; c < panels.num_components(); ++c) {
        int count = 0;
        double lmin = 1e300, lmax = 0.0;
        for (const auto& p : panels.panels) {
            if (p.component != c) continue;
            ++count;
            lmin = std::min(lmin, p.length);
            lmax = std::max(lmax, p.length);
        }
        comps.push_back({{"name", panels.curves[c].name},
                         {"panels", count},
                         {"min_panel_length", lmin},
                         {"max_panel_length", lmax}});
    }
    const json out{{"num_panels", panels.num_panels()},
                   {"num_nodes", panels.num_nodes()},
                   {"total_length", panels.total_length},
                   {"signed_area", signed_area(panels)},
                   {"components", comps}};
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stokes Dirichlet eigenvalues by Fredholm determinant sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "fit determinants over the configured k-intervals");
    sweep_cmd->add_option("config", config_path, "run configuration (JSON)")->required();

    std::string kind;
    double r1 = 1.0, r2 = 1.7, k_min = 0.0, k_max = 0.0;
    auto* ref_cmd = app.add_subcommand("reference", "analytic root tables as CSV");
    ref_cmd->add_option("kind", kind, "annulus | disk_neumann")->required();
    ref_cmd->add_option("--r1", r1, "inner radius");
    ref_cmd->add_option("--r2", r2, "outer radius");
    ref_cmd->add_option("--kmin", k_min, "window start")->required();
    ref_cmd->add_option("--kmax", k_max, "window end")->required();

    std::string roots_path;
    int index = 0;
    GridSpec grid;
    std::vector<double> bounds;
    auto* field_cmd = app.add_subcommand("eigenfield", "velocity and vorticity of an accepted root on a grid");
    field_cmd->add_option("config", config_path, "run configuration (JSON)")->required();
    field_cmd->add_option("--roots", roots_path, "roots.json from a sweep")->required();
    field_cmd->add_option("--index", index, "index among accepted roots");
    field_cmd->add_option("--nx", grid.nx, "grid points in x");
    field_cmd->add_option("--ny", grid.ny, "grid points in y");
    field_cmd->add_option("--bounds", bounds, "xmin xmax ymin ymax (default: boundary bounding box)")
        ->expected(4);
    field_cmd->add_option("--mask-factor", grid.mask_factor, "near-boundary mask radius in panel lengths");

    auto* panels_cmd = app.add_subcommand("panels", "print the panelization summary");
    panels_cmd->add_option("config", config_path, "run configuration (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sweep_cmd) return cmd_sweep(config_path);
        if (*ref_cmd) return cmd_reference(kind, r1, r2, k_min, k_max);
        if (*field_cmd) {
            if (!bounds.empty()) {
                grid.x_min = bounds[0];
                grid.x_max = bounds[1];
                grid.y_min = bounds[2];
                grid.y_max = bounds[3];
            }
            return cmd_eigenfield(config_path, roots_path, index, grid, bounds.empty());
        }
        if (*panels_cmd) return cmd_panels(config_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitConfig;
}
