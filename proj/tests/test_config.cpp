#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "stokeseig/config.hpp"
#include "stokeseig/errors.hpp"
#include "stokeseig/quadrature_rules.hpp"

using namespace stokeseig;
using nlohmann::json;

namespace {

json annulus_json() {
    return json::parse(R"({
        "geometry": {"type": "annulus", "r1": 1.0, "r2": 1.7, "n_panels": 8},
        "formulation": "double_layer",
        "allow_double_layer_multiply_connected": true,
        "intervals": [[13.0, 14.0]]
    })");
}

std::string field_of(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("defaults and derived quantities") {
    const RunConfig c = parse_config(annulus_json());
    CHECK(c.geometry.type == "annulus");
    CHECK(c.eta == 1.0);
    CHECK(c.eps_cheb == 1e-13);
    CHECK(c.tolerances.far_factor == 1.5);
    CHECK(c.k_max() == 14.0);
    CHECK(c.effective_max_panel_len() == doctest::Approx(2.0 * std::numbers::pi / 14.0));
    const KernelContext k = c.kernel_context();
    CHECK(k.formulation == Formulation::double_layer);
    const SweepOptions s = c.sweep_options();
    CHECK(s.fit.eps_cheb == 1e-13);
    CHECK(s.system.allow_double_layer_multiply_connected);
    CHECK(s.quad.far_factor == 1.5);
    CHECK(build_panels(c).num_nodes() == 368);
}

TEST_CASE("JSON round trip") {
    json j = annulus_json();
    j["eta"] = 2.5;
    j["formulation"] = "combined_field";
    j["tolerances"] = {{"quad_tol", 1e-12}, {"max_degree", 512}, {"panel_resolve_tol", 1e-8}};
    j["intervals"] = {{1.0, 2.0}, {2.0, 3.5}};
    j["seed"] = 42;
    j["threads"] = 2;
    const RunConfig c = parse_config(j);
    CHECK(parse_config(to_json(c)) == c);
    for (const char* type : {"circle", "barbell", "starfish"}) {
        json g = annulus_json();
        g["geometry"] = {{"type", type}};
        g["formulation"] = "combined_field";
        const RunConfig d = parse_config(g);
        CHECK(parse_config(to_json(d)) == d);
    }
}

TEST_CASE("validation errors name the field") {
    json j = annulus_json();
    j.erase("geometry");
    CHECK(field_of(j) == "geometry");

    j = annulus_json();
    j["bogus"] = 1;
    CHECK(field_of(j) == "bogus");

    j = annulus_json();
    j["tolerances"] = {{"quad_tl", 1e-12}};
    CHECK(field_of(j) == "tolerances.quad_tl");

    j = annulus_json();
    j["geometry"]["type"] = "hexagon";
    CHECK(field_of(j) == "geometry.type");

    j = annulus_json();
    j["eta"] = "large";
    CHECK(field_of(j) == "eta");

    j = annulus_json();
    j["intervals"] = {{2.0, 1.0}};
    CHECK(field_of(j) == "intervals");

    j = annulus_json();
    j["intervals"] = json::array();
    CHECK(field_of(j) == "intervals");

    j = annulus_json();
    j["formulation"] = "combined_field";
    j["eta"] = 0.0;
    CHECK(field_of(j) == "eta");

    j = annulus_json();
    j["formulation"] = "single_layer";
    CHECK(field_of(j) == "formulation");

    j = annulus_json();
    j["tolerances"] = {{"panel_resolve_tol", -1.0}};
    CHECK(field_of(j) == "tolerances.panel_resolve_tol");

    j = annulus_json();
    j["geometry"]["r2"] = 0.5;
    CHECK(field_of(j) == "geometry.r1");

    CHECK(field_of(json::array()) == "config");
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("output directory environment override") {
    const RunConfig c = parse_config(annulus_json());
    ::unsetenv(kOutputDirEnv);
    CHECK(resolve_output_dir(c) == "stokeseig_out");
    ::setenv(kOutputDirEnv, "/tmp/elsewhere", 1);
    CHECK(resolve_output_dir(c) == "/tmp/elsewhere");
    ::unsetenv(kOutputDirEnv);
}

TEST_CASE("formulation names") {
    CHECK(to_string(Formulation::double_layer) == "double_layer");
    CHECK(to_string(Formulation::combined_field) == "combined_field");
    CHECK(formulation_from_string("combined_field") == Formulation::combined_field);
    CHECK_THROWS_AS(formulation_from_string("x"), ConfigError);
}

TEST_CASE("panel files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "stokeseig_test_config";
    fs::create_directories(dir);
    const auto& r = gl16();
    json panels = json::array();
    const int np = 8;
    for (int p = 0; p < np; ++p) {
        json nodes = json::array();
        for (int n = 0; n < 16; ++n) {
            const double t = 2.0 * std::numbers::pi * (p + 0.5 * (r.nodes[n] + 1.0)) / np;
            nodes.push_back({std::cos(t), std::sin(t)});
        }
        panels.push_back(nodes);
    }
    const fs::path good = dir / "circle.json";
    std::ofstream(good) << json{{"components", {{{"orientation", "outer"}, {"panels", panels}}}}}.dump();
    json j = annulus_json();
    j["geometry"] = {{"type", "panel_file"}, {"path", good.string()}};
    j["max_panel_len"] = 10.0;
    j["formulation"] = "combined_field";
    const BoundaryPanels b = build_panels(parse_config(j));
    CHECK(b.num_components() == 1);
    CHECK(b.total_length == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-9));

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << json{{"components", {{{"orientation", "sideways"}, {"panels", panels}}}}}.dump();
    j["geometry"]["path"] = bad.string();
    CHECK_THROWS_AS(build_panels(parse_config(j)), ConfigError);
    j["geometry"]["path"] = (dir / "missing.json").string();
    CHECK_THROWS_AS(build_panels(parse_config(j)), ConfigError);
    fs::remove_all(dir);
}
