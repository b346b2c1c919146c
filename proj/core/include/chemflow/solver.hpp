#pragma once

#include <functional>

#include "chemflow/diagnostics.hpp"
#include "chemflow/dynamics.hpp"

namespace chemflow {

struct StepConfig {
    double dt = 0.0;  // <= 0 means CFL-controlled
    double dt_max = 5e-3;
    double cfl_safety = 0.4;
    double pos_tol = 1e-8;
    std::string scheme = "imex_rk2";
};

/// Full-tendency right side, evaluated at the given state. The stage index
/// is 0 for the start-of-step evaluation and 1 for the predictor endpoint;
/// frozen-coefficient callers use it to pick the coefficient snapshot.
using StagedRhs = std::function<Tendency(const State&, int stage)>;

/// One integrating-factor Heun step: diffusion is applied exactly through
/// exp(-|xi|^2 dt), the remaining terms explicitly at second order. The
/// velocity is re-projected after each stage. No admissibility checks.
State imex_step(const State& s, double dt, const StagedRhs& rhs);

/// CFL bound from the transport speeds |u| and |chi(c) grad c|; diffusion
/// imposes no restriction. Capped by cfg.dt_max.
double cfl_dt(const State& s, const ModelFunctions& mf, const StepConfig& cfg);

struct IntegrateResult {
    State final_state;
    std::vector<DiagnosticsRecord> series;
    std::vector<State> trajectory;  // filled only when requested
};

/// Advance s0 to time s0.time + horizon. Fixed dt when cfg.dt > 0 (horizon
/// must be an integer multiple), otherwise CFL-adaptive. A step whose output
/// violates positivity or finiteness is retried at half the size, at most 10
/// halvings, then BlowupError carrying the last accepted record is thrown.
IntegrateResult integrate(const State& s0, double horizon, const StepConfig& cfg,
                          const StagedRhs& rhs, const ModelFunctions& mf,
                          const PotentialSpec& pot, const DiagnosticsOptions& opt,
                          bool keep_trajectory = false, int series_stride = 1);

/// Convenience wrapper for the unregularized right side.
StagedRhs full_rhs(const ModelFunctions& mf, const PotentialSpec& pot);
StagedRhs regularized_rhs(const ModelFunctions& mf, const PotentialSpec& pot, CutoffParam k,
                          MollifierParam eps);

}  // namespace chemflow
