#include "chemflow/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chemflow/scenario.hpp"

namespace chemflow {
namespace {

using nlohmann::json;

void apply_override(json& j, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("override must be key=value: " + spec);
    const std::string key = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);
    json* node = &j;
    std::istringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.')) parts.push_back(part);
    if (parts.empty()) throw std::runtime_error("override has empty key: " + spec);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    json parsed = json::parse(value, nullptr, false);
    (*node)[parts.back()] = parsed.is_discarded() ? json(value) : parsed;
}

template <typename T>
void read(const json& j, const char* section, const char* key, T& out) {
    if (!j.contains(section)) return;
    const json& s = j.at(section);
    if (!s.contains(key)) return;
    try {
        out = s.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::runtime_error(std::string("config key ") + section + "." + key +
                                 " has the wrong type");
    }
}

template <typename T>
void read_top(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::runtime_error(std::string("config key ") + key + " has the wrong type");
    }
}

RunConfig from_json(json j, const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) apply_override(j, o);

    RunConfig cfg;
    read_top(j, "mode", cfg.mode);
    read_top(j, "scenario", cfg.scenario);
    read_top(j, "output", cfg.output_dir);
    read_top(j, "seed", cfg.seed);
    read_top(j, "snapshot_stride", cfg.snapshot_stride);
    read_top(j, "series_stride", cfg.series_stride);
    read_top(j, "horizon", cfg.horizon);

    if (j.contains("grid")) {
        cfg.grid_given = true;
        read(j, "grid", "dim", cfg.grid.dim);
        read(j, "grid", "points_per_axis", cfg.grid.points_per_axis);
        read(j, "grid", "dealias_fraction", cfg.grid.dealias_fraction);
        if (j["grid"].contains("side_length")) {
            const json& sl = j["grid"]["side_length"];
            if (sl.is_number()) {
                for (int a = 0; a < 3; ++a) cfg.grid.side_length[a] = sl.get<double>();
            } else if (sl.is_array()) {
                for (std::size_t a = 0; a < sl.size() && a < 3; ++a)
                    cfg.grid.side_length[a] = sl[a].get<double>();
            }
        }
    }

    read(j, "model", "family", cfg.model_family);
    read(j, "model", "kappa1", cfg.kappa1);
    read(j, "model", "c_star", cfg.c_star);
    read(j, "model", "delta", cfg.delta);
    read(j, "model", "mu", cfg.mu);
    read(j, "model", "chi_perturbation", cfg.chi_perturbation);
    read(j, "model", "chi_scale", cfg.chi_scale);

    read(j, "potential", "kind", cfg.potential_kind);
    read(j, "potential", "amplitude", cfg.potential_amplitude);
    read(j, "potential", "width", cfg.potential_width);

    if (j.contains("solver")) {
        const json& s = j["solver"];
        if (s.contains("dt")) {
            if (s["dt"].is_string()) {
                if (s["dt"].get<std::string>() != "auto")
                    throw std::runtime_error("config key solver.dt must be a number or \"auto\"");
                cfg.step.dt = 0.0;
            } else {
                cfg.step.dt = s["dt"].get<double>();
            }
        }
        read(j, "solver", "dt_max", cfg.step.dt_max);
        read(j, "solver", "cfl_safety", cfg.step.cfl_safety);
        read(j, "solver", "pos_tol", cfg.step.pos_tol);
        read(j, "solver", "scheme", cfg.step.scheme);
        read(j, "solver", "lambda1", cfg.lambda1);
    }

    read(j, "picard", "horizon", cfg.picard.horizon);
    read(j, "picard", "steps", cfg.picard.steps);
    read(j, "picard", "tol", cfg.picard.tol);
    read(j, "picard", "max_iters", cfg.picard.max_iters);
    read(j, "picard", "sobolev_m", cfg.picard.sobolev_m);

    read(j, "ladder", "k_values", cfg.ladder_k_values);
    read(j, "ladder", "eps_values", cfg.ladder_eps_values);
    read(j, "ladder", "horizon", cfg.ladder_horizon);

    return cfg;
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text,
                            const std::vector<std::string>& overrides) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("config is not valid JSON");
    return from_json(std::move(j), overrides);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), overrides);
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> bad;
    if (cfg.mode != "simulate" && cfg.mode != "picard" && cfg.mode != "ladder" &&
        cfg.mode != "audit")
        bad.push_back("mode: must be one of simulate, picard, ladder, audit");
    bool scenario_ok = true;
    try {
        find_scenario(cfg.scenario);
    } catch (const std::exception&) {
        scenario_ok = false;
        bad.push_back("scenario: unknown id '" + cfg.scenario + "'");
    }
    if (cfg.grid_given) {
        try {
            cfg.grid.validate();
        } catch (const std::exception& e) {
            bad.push_back(std::string(e.what()));
        }
    } else if (!scenario_ok) {
        bad.push_back("grid: required when the scenario is unknown");
    }
    if (!cfg.model_family.empty() && cfg.model_family != "zero" &&
        cfg.model_family != "rational" && cfg.model_family != "step")
        bad.push_back("model.family: must be zero, rational or step");
    if (cfg.model_family == "rational" || cfg.model_family == "step") {
        if (!(cfg.kappa1 > 0.0)) bad.push_back("model.kappa1: must be > 0");
        if (!(cfg.c_star > 0.0)) bad.push_back("model.c_star: must be > 0");
        if (!(cfg.mu > 0.0)) bad.push_back("model.mu: must be > 0");
    }
    if (cfg.model_family == "step" && !(cfg.delta > 0.0))
        bad.push_back("model.delta: must be > 0");
    if (!cfg.potential_kind.empty() && cfg.potential_kind != "zero" &&
        cfg.potential_kind != "gravity" && cfg.potential_kind != "radial")
        bad.push_back("potential.kind: must be zero, gravity or radial");
    if (cfg.potential_kind == "radial" && !(cfg.potential_width > 0.0))
        bad.push_back("potential.width: must be > 0");
    if (cfg.step.dt < 0.0) bad.push_back("solver.dt: must be >= 0 (0 or \"auto\" for CFL)");
    if (!(cfg.step.dt_max > 0.0)) bad.push_back("solver.dt_max: must be > 0");
    if (!(cfg.step.cfl_safety > 0.0 && cfg.step.cfl_safety <= 1.0))
        bad.push_back("solver.cfl_safety: must lie in (0,1]");
    if (!(cfg.step.pos_tol > 0.0)) bad.push_back("solver.pos_tol: must be > 0");
    if (cfg.step.scheme != "imex_rk2") bad.push_back("solver.scheme: only imex_rk2 is available");
    if (!(cfg.lambda1 > 0.0)) bad.push_back("solver.lambda1: must be > 0");
    if (!(cfg.horizon > 0.0)) bad.push_back("horizon: must be > 0");
    if (!(cfg.picard.horizon > 0.0)) bad.push_back("picard.horizon: must be > 0");
    if (cfg.picard.steps < 2) bad.push_back("picard.steps: must be >= 2");
    if (!(cfg.picard.tol > 0.0)) bad.push_back("picard.tol: must be > 0");
    if (cfg.picard.max_iters < 1) bad.push_back("picard.max_iters: must be >= 1");
    if (cfg.picard.sobolev_m < 3) bad.push_back("picard.sobolev_m: must be >= 3");
    if (cfg.ladder_k_values.empty() ||
        cfg.ladder_k_values.size() != cfg.ladder_eps_values.size())
        bad.push_back("ladder.k_values/eps_values: must be nonempty lists of equal length");
    for (std::size_t i = 1; i < cfg.ladder_k_values.size(); ++i)
        if (cfg.ladder_k_values[i] <= cfg.ladder_k_values[i - 1]) {
            bad.push_back("ladder.k_values: must strictly ascend");
            break;
        }
    for (std::size_t i = 1; i < cfg.ladder_eps_values.size(); ++i)
        if (cfg.ladder_eps_values[i] >= cfg.ladder_eps_values[i - 1]) {
            bad.push_back("ladder.eps_values: must strictly descend");
            break;
        }
    if (!(cfg.ladder_horizon > 0.0)) bad.push_back("ladder.horizon: must be > 0");
    if (cfg.output_dir.empty()) bad.push_back("output: must not be empty");
    if (cfg.snapshot_stride < 0) bad.push_back("snapshot_stride: must be >= 0");
    if (cfg.series_stride < 1) bad.push_back("series_stride: must be >= 1");
    return bad;
}

std::string resolved_config_json(const RunConfig& cfg) {
    json j;
    j["mode"] = cfg.mode;
    j["scenario"] = cfg.scenario;
    j["output"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    j["snapshot_stride"] = cfg.snapshot_stride;
    j["series_stride"] = cfg.series_stride;
    j["horizon"] = cfg.horizon;
    j["grid"] = {{"dim", cfg.grid.dim},
                 {"points_per_axis", cfg.grid.points_per_axis},
                 {"side_length", {cfg.grid.side_length[0], cfg.grid.side_length[1],
                                  cfg.grid.side_length[2]}},
                 {"dealias_fraction", cfg.grid.dealias_fraction}};
    j["model"] = {{"family", cfg.model_family}, {"kappa1", cfg.kappa1},
                  {"c_star", cfg.c_star},       {"delta", cfg.delta},
                  {"mu", cfg.mu},               {"chi_perturbation", cfg.chi_perturbation},
                  {"chi_scale", cfg.chi_scale}};
    j["potential"] = {{"kind", cfg.potential_kind},
                      {"amplitude", cfg.potential_amplitude},
                      {"width", cfg.potential_width}};
    j["solver"] = {{"dt", cfg.step.dt},
                   {"dt_max", cfg.step.dt_max},
                   {"cfl_safety", cfg.step.cfl_safety},
                   {"pos_tol", cfg.step.pos_tol},
                   {"scheme", cfg.step.scheme},
                   {"lambda1", cfg.lambda1}};
    j["picard"] = {{"horizon", cfg.picard.horizon},
                   {"steps", cfg.picard.steps},
                   {"tol", cfg.picard.tol},
                   {"max_iters", cfg.picard.max_iters},
                   {"sobolev_m", cfg.picard.sobolev_m}};
    j["ladder"] = {{"k_values", cfg.ladder_k_values},
                   {"eps_values", cfg.ladder_eps_values},
                   {"horizon", cfg.ladder_horizon}};
    return j.dump(2);
}

}  // namespace chemflow
