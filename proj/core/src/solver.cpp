#include "chemflow/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemflow {
namespace {

// Nonlinear part N(Y) = rhs(Y) - Laplacian(Y); diffusion is carried by the
// integrating factor instead.
struct Nonlinear {
    ScalarField n;
    ScalarField c;
    VectorField u;
};

Nonlinear nonlinear_part(const State& s, const Tendency& t) {
    Nonlinear nl{t.dn - laplacian(s.n), t.dc - laplacian(s.c), t.du - laplacian(s.u)};
    return nl;
}

State heat_state(const State& s, double dt) {
    return State{heat_propagate(s.n, dt), heat_propagate(s.c, dt), heat_propagate(s.u, dt),
                 s.time};
}

bool admissible(const State& s, double pos_tol) {
    const double inf = std::numeric_limits<double>::infinity();
    const auto& nv = s.n.values();
    const auto& cv = s.c.values();
    for (double x : nv)
        if (!std::isfinite(x)) return false;
    for (double x : cv)
        if (!std::isfinite(x)) return false;
    for (int a = 0; a < s.u.dim(); ++a)
        for (double x : s.u[a].values())
            if (!std::isfinite(x)) return false;
    const double n_inf = lp_norm(s.n, inf);
    const double c_inf = lp_norm(s.c, inf);
    if (min_value(s.n) < -pos_tol * (1.0 + n_inf)) return false;
    if (min_value(s.c) < -pos_tol * (1.0 + c_inf)) return false;
    return true;
}

}  // namespace

State imex_step(const State& s, double dt, const StagedRhs& rhs) {
    const Nonlinear n0 = nonlinear_part(s, rhs(s, 0));

    // predictor: Y1 = E(Y + dt N(Y))
    State pred{heat_propagate(s.n + dt * n0.n, dt), heat_propagate(s.c + dt * n0.c, dt),
               leray_project(heat_propagate(s.u + dt * n0.u, dt)), s.time + dt};
    const Nonlinear n1 = nonlinear_part(pred, rhs(pred, 1));

    // corrector: Y' = E Y + (dt/2)(E N(Y) + N(Y1)) = E(Y + (dt/2) N(Y)) + (dt/2) N(Y1)
    State out{heat_propagate(s.n + 0.5 * dt * n0.n, dt) + 0.5 * dt * n1.n,
              heat_propagate(s.c + 0.5 * dt * n0.c, dt) + 0.5 * dt * n1.c,
              leray_project(heat_propagate(s.u + 0.5 * dt * n0.u, dt) + 0.5 * dt * n1.u),
              s.time + dt};
    return out;
}

double cfl_dt(const State& s, const ModelFunctions& mf, const StepConfig& cfg) {
    const double inf = std::numeric_limits<double>::infinity();
    const GridSpec& grid = s.n.grid();
    double h = grid.spacing(0);
    for (int a = 1; a < grid.dim; ++a) h = std::min(h, grid.spacing(a));
    const double u_speed = lp_norm(s.u, inf);
    const ScalarField chi_c = apply_pointwise(s.c, mf.chi);
    const VectorField gc = gradient(s.c);
    VectorField drift(grid);
    for (int a = 0; a < grid.dim; ++a) drift[a] = pointwise_product(chi_c, gc[a]);
    const double chem_speed = lp_norm(drift, inf);
    const double floor = 1e-6;
    const double dt = cfg.cfl_safety * h / (u_speed + chem_speed + floor);
    return std::min(dt, cfg.dt_max);
}

IntegrateResult integrate(const State& s0, double horizon, const StepConfig& cfg,
                          const StagedRhs& rhs, const ModelFunctions& mf,
                          const PotentialSpec& pot, const DiagnosticsOptions& opt,
                          bool keep_trajectory, int series_stride) {
    if (!(horizon > 0.0)) throw std::invalid_argument("integrate: horizon must be > 0");
    if (series_stride < 1) throw std::invalid_argument("integrate: series stride must be >= 1");
    const double t_end = s0.time + horizon;

    IntegrateResult res;
    res.final_state = s0;
    // `last` is the record of the most recent emitted sample; the trapezoidal
    // accumulators therefore integrate at the emitted series resolution.
    DiagnosticsRecord last = record(s0, mf, pot, opt);
    res.series.push_back(last);
    if (keep_trajectory) res.trajectory.push_back(s0);

    long step_index = 0;
    while (res.final_state.time < t_end - 1e-14 * (1.0 + t_end)) {
        const State& cur = res.final_state;
        double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt(cur, mf, cfg);
        dt = std::min(dt, t_end - cur.time);

        State next = cur;
        bool accepted = false;
        for (int halving = 0; halving <= 10; ++halving) {
            next = imex_step(cur, dt, rhs);
            if (admissible(next, cfg.pos_tol)) {
                accepted = true;
                break;
            }
            dt *= 0.5;
        }
        if (!accepted) throw BlowupError(last);

        res.final_state = next;
        ++step_index;
        const bool at_end = next.time >= t_end - 1e-14 * (1.0 + t_end);
        if (step_index % series_stride == 0 || at_end) {
            last = record(next, mf, pot, opt, &last);
            res.series.push_back(last);
        }
        if (keep_trajectory) res.trajectory.push_back(next);
    }
    return res;
}

StagedRhs full_rhs(const ModelFunctions& mf, const PotentialSpec& pot) {
    return [&mf, &pot](const State& s, int) { return rhs_full(s, mf, pot); };
}

StagedRhs regularized_rhs(const ModelFunctions& mf, const PotentialSpec& pot, CutoffParam k,
                          MollifierParam eps) {
    return [&mf, &pot, k, eps](const State& s, int) {
        return rhs_regularized(s, mf, pot, k, eps);
    };
}

}  // namespace chemflow
