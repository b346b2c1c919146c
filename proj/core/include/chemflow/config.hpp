#pragma once

#include <string>
#include <vector>

#include "chemflow/grid.hpp"
#include "chemflow/picard.hpp"
#include "chemflow/solver.hpp"

namespace chemflow {

/// Fully resolved run configuration. Fields mirror the JSON schema; an empty
/// model family or potential kind means "use the scenario's own choice".
struct RunConfig {
    std::string mode = "simulate";  // simulate | picard | ladder | audit
    std::string scenario = "gaussian_drop";

    bool grid_given = false;
    GridSpec grid;

    std::string model_family;  // "", "zero", "rational", "step"
    double kappa1 = 1.0;
    double c_star = 0.3;
    double delta = 0.05;
    double mu = 1.0;
    double chi_perturbation = 0.0;
    double chi_scale = 1.0;

    std::string potential_kind;  // "", "zero", "gravity", "radial"
    double potential_amplitude = 0.1;
    double potential_width = 1.0;

    StepConfig step;
    double lambda1 = 1.0;
    double horizon = 1.0;

    PicardConfig picard;

    std::vector<double> ladder_k_values{16.0, 64.0, 256.0};
    std::vector<double> ladder_eps_values{0.2, 0.1, 0.05};
    double ladder_horizon = 0.25;

    std::string output_dir = "out";
    int snapshot_stride = 0;  // 0 disables snapshots
    int series_stride = 1;
    unsigned seed = 0;
};

/// Parse a JSON config file; overrides are dotted "key=value" pairs applied
/// on top (e.g. "solver.dt=1e-3"). Throws std::runtime_error on parse
/// failures naming the offending key.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
RunConfig parse_config_text(const std::string& json_text,
                            const std::vector<std::string>& overrides = {});

/// Every violated key with its complaint; empty means valid.
std::vector<std::string> validate_config(const RunConfig& cfg);

/// The fully resolved configuration re-serialized as JSON text, for the
/// run manifest.
std::string resolved_config_json(const RunConfig& cfg);

}  // namespace chemflow
