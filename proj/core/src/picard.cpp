#include "chemflow/picard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemflow {

double x_m_norm(const State& s, int m) {
    return sobolev_norm(s.n, m - 1) + sobolev_norm(s.c, m) + sobolev_norm(s.u, m);
}

std::pair<State, PicardReport> picard_solve(const State& s0, const PicardConfig& cfg,
                                            const ModelFunctions& mf, const PotentialSpec& pot) {
    if (!(cfg.horizon > 0.0)) throw std::invalid_argument("picard_solve: horizon must be > 0");
    if (cfg.steps < 2) throw std::invalid_argument("picard_solve: need at least 2 substeps");
    if (cfg.sobolev_m < 3) throw std::invalid_argument("picard_solve: sobolev_m must be >= 3");
    const double dt = cfg.horizon / cfg.steps;

    PicardReport rep;
    rep.horizon = cfg.horizon;
    rep.sobolev_m = cfg.sobolev_m;

    // iterate 0: initial data held constant in time
    std::vector<State> prev(cfg.steps + 1, s0);
    for (int i = 0; i <= cfg.steps; ++i) prev[i].time = s0.time + i * dt;

    State result = s0;
    int consecutive_expanding = 0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        std::vector<State> traj;
        traj.reserve(cfg.steps + 1);
        traj.push_back(s0);
        for (int i = 0; i < cfg.steps; ++i) {
            // stage 0 freezes coefficients at t_i, stage 1 at t_{i+1}
            StagedRhs rhs = [&](const State& s, int stage) {
                return rhs_linearized(s, prev[i + stage], mf, pot);
            };
            traj.push_back(imex_step(traj.back(), dt, rhs));
        }

        const State diff{traj.back().n - prev.back().n, traj.back().c - prev.back().c,
                         traj.back().u - prev.back().u, traj.back().time};
        const double delta = x_m_norm(diff, cfg.sobolev_m);
        rep.delta_norms.push_back(delta);
        if (rep.delta_norms.size() >= 2) {
            const double prev_delta = rep.delta_norms[rep.delta_norms.size() - 2];
            const double ratio = prev_delta > 0.0
                                     ? delta / prev_delta
                                     : (delta > 0.0 ? std::numeric_limits<double>::infinity()
                                                    : 0.0);
            rep.contraction_ratios.push_back(ratio);
            consecutive_expanding = ratio > 1.0 ? consecutive_expanding + 1 : 0;
        }
        rep.iterate_count = iter;
        prev = std::move(traj);
        result = prev.back();

        if (delta < cfg.tol) {
            rep.converged = true;
            return {result, rep};
        }
        if (consecutive_expanding >= 3) throw PicardError(rep);
    }
    return {result, rep};
}

}  // namespace chemflow
