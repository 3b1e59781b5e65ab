#pragma once

/**
 * @file config.hpp
 * @brief Run configuration: JSON schema, validation and geometry construction.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stokeseig/detsweep.hpp"
#include "stokeseig/geometry.hpp"
#include "stokeseig/potentials.hpp"

namespace stokeseig {

/// Built-in domain or panel file. Unused parameters keep their defaults.
struct GeometrySpec {
    std::string type;  ///< circle | annulus | barbell | starfish | panel_file
    double radius = 1.0;                ///< circle
    double r1 = 1.0, r2 = 1.7;          ///< annulus
    int n_panels = 0;                   ///< circle: panel count; annulus: inner panel count (0: from max_panel_len)
    int n_outer = 0;                    ///< annulus outer panel count (0: balanced)
    double rounding_h = 0.06;           ///< barbell and starfish corner rounding
    double scale = 1.0;                 ///< barbell length scale
    std::string path;                   ///< panel_file
    bool operator==(const GeometrySpec&) const = default;
};

struct Tolerances {
    double quad_tol = 1e-13;
    double far_factor = 1.5;
    int max_depth = 40;
    int initial_degree = 16;
    int max_degree = 1024;
    double pair_alignment = 1e-5;
    double simple_sigma2 = 1e-5;
    double refine_threshold = 1e-8;
    double panel_resolve_tol = 1e-12;  ///< geometry interpolation check in panelize
    bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
    GeometrySpec geometry;
    Formulation formulation = Formulation::double_layer;
    bool allow_double_layer_multiply_connected = false;
    double eta = 1.0;
    std::vector<std::pair<double, double>> intervals;
    double eps_cheb = 1e-13;
    Tolerances tolerances;
    double max_panel_len = 0.0;  ///< 0: 2 pi / k_max
    std::string output_dir = "stokeseig_out";
    int threads = 0;
    std::uint64_t seed = 0;
    bool operator==(const RunConfig&) const = default;

    double k_max() const;
    double effective_max_panel_len() const;
    KernelContext kernel_context() const;
    SweepOptions sweep_options() const;
};

/// Environment variable that replaces output_dir when set.
inline constexpr const char* kOutputDirEnv = "STOKESEIG_OUTPUT_DIR";

/// Parse and validate; throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& c);

/// output_dir, or the environment override.
std::string resolve_output_dir(const RunConfig& c);

std::string to_string(Formulation f);
Formulation formulation_from_string(const std::string& s);

/// Curves for the geometry (panel files are read here).
std::vector<CurveComponent> build_curves(const GeometrySpec& g, std::uint64_t seed);
BoundaryPanels build_panels(const RunConfig& c);

/// Panel file: {"components": [{"orientation": "outer"|"inclusion", "panels": [[[x, y] x16], ...]}]}.
std::vector<CurveComponent> read_panel_file(const std::string& path);

}  // namespace stokeseig
