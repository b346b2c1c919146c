#pragma once

#include <utility>

#include "chemflow/solver.hpp"

namespace chemflow {

struct PicardConfig {
    double horizon = 0.01;
    int steps = 16;  // uniform substeps over the horizon
    double tol = 1e-10;
    int max_iters = 20;
    int sobolev_m = 3;
};

struct PicardReport {
    int iterate_count = 0;
    std::vector<double> delta_norms;        // successive-difference norms at final time
    std::vector<double> contraction_ratios;  // delta[j]/delta[j-1]
    double horizon = 0.0;
    int sobolev_m = 3;
    bool converged = false;
};

struct PicardError : std::runtime_error {
    PicardReport report;
    explicit PicardError(PicardReport rep)
        : std::runtime_error("fixed-point iteration diverged"), report(std::move(rep)) {}
};

/// Combined solution-space norm |n|_{H^{m-1}} + |c|_{H^m} + |u|_{H^m}.
double x_m_norm(const State& s, int m);

/// Fixed-point construction: iterate j+1 solves the linear system whose
/// transport and flux coefficients are frozen along the trajectory of
/// iterate j (iterate 0 is the initial data held constant in time). Stops
/// when the final-time norm of the successive difference drops below tol;
/// throws PicardError after 3 consecutive ratios above 1.
std::pair<State, PicardReport> picard_solve(const State& s0, const PicardConfig& cfg,
                                            const ModelFunctions& mf, const PotentialSpec& pot);

}  // namespace chemflow
