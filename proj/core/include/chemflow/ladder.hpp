#pragma once

#include "chemflow/scenario.hpp"
#include "chemflow/solver.hpp"

namespace chemflow {

/// A sequence of regularization strengths: cutoff thresholds ascending,
/// mollifier widths descending, paired index by index into rungs.
struct LadderSpec {
    GridSpec grid;
    std::string scenario_id = "gaussian_drop";
    double horizon = 0.25;
    StepConfig step;
    DiagnosticsOptions diag;
    std::vector<double> k_values;
    std::vector<double> eps_values;
};

struct LadderRung {
    double k = 0.0;
    double eps = 0.0;
    bool completed = false;
    std::string abort_reason;
    double distance_to_reference = 0.0;
    InequalityAudit audit;
    /// C0 + C1 * X(T): the fitted right side of the uniform energy bound.
    double combined_bound = 0.0;
    std::vector<DiagnosticsRecord> series;
};

struct LadderReport {
    std::vector<LadderRung> rungs;
    /// True when the reference is the unregularized run (2D); otherwise the
    /// finest rung serves as reference and its own distance is zero.
    bool reference_is_unregularized = false;
    bool distances_monotone = false;
    bool all_audits_passed = false;
    double audit_spread = 0.0;  // max/min of combined bounds over completed rungs
};

LadderReport run_ladder(const LadderSpec& spec);

struct InitialApproxReport {
    double n_l1_error = 0.0;
    double grad_c_l1_error = 0.0;
    double u_l2_sq_error = 0.0;
    double grad_c_l2 = 0.0;
    double grad_c_l2_original = 0.0;
    double moment = 0.0;
    double moment_original = 0.0;
    bool bounds_hold = false;
};

/// Regularized initial data (mollified n0, c0; cutoff + mollified u0)
/// compared against the original, with the uniform-bound checks.
InitialApproxReport check_initial_approx(const ScalarField& n0, const ScalarField& c0,
                                         const VectorField& u0, CutoffParam k,
                                         MollifierParam eps);

}  // namespace chemflow
