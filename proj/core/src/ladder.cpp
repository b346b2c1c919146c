#include "chemflow/ladder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemflow {
namespace {

double state_distance(const State& a, const State& b) {
    double d = lp_norm(a.n - b.n, 2.0) + lp_norm(a.c - b.c, 2.0);
    for (int i = 0; i < a.u.dim(); ++i) d += lp_norm(a.u[i] - b.u[i], 2.0);
    return d;
}

State regularized_initial(const State& s0, CutoffParam k, MollifierParam eps) {
    return State{mollify(s0.n, eps), mollify(s0.c, eps),
                 leray_project(cutoff(mollify(s0.u, eps), k)), s0.time};
}

double combined_bound(const std::vector<DiagnosticsRecord>& series,
                      const InequalityAudit& audit) {
    // X(T) = T + int_0^T (|grad c|^2 + |u|^2), trapezoid as in the audit fit
    double acc = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = series[i].time - series[i - 1].time;
        acc += 0.5 * dt *
               (series[i - 1].grad_c_sq + 2.0 * series[i - 1].kinetic + series[i].grad_c_sq +
                2.0 * series[i].kinetic);
    }
    return audit.c0 + audit.c1 * (series.back().time + acc);
}

}  // namespace

LadderReport run_ladder(const LadderSpec& spec) {
    if (spec.k_values.empty() || spec.k_values.size() != spec.eps_values.size())
        throw std::invalid_argument("run_ladder: k and eps lists must pair up");
    for (std::size_t i = 1; i < spec.k_values.size(); ++i) {
        if (spec.k_values[i] <= spec.k_values[i - 1])
            throw std::invalid_argument("run_ladder: cutoff thresholds must ascend");
        if (spec.eps_values[i] >= spec.eps_values[i - 1])
            throw std::invalid_argument("run_ladder: mollifier widths must descend");
    }
    const Scenario& sc = find_scenario(spec.scenario_id);
    const ScenarioInstance inst = sc.make(spec.grid);

    DiagnosticsOptions diag = spec.diag;
    diag.energy_3d = true;  // the uniform bound is stated for the combined form

    LadderReport report;
    report.reference_is_unregularized = spec.grid.dim == 2;

    const std::size_t rung_count = spec.k_values.size();
    std::vector<State> finals(rung_count);
    for (std::size_t i = 0; i < rung_count; ++i) {
        LadderRung rung;
        rung.k = spec.k_values[i];
        rung.eps = spec.eps_values[i];
        const CutoffParam k{rung.k};
        const MollifierParam eps{rung.eps};
        try {
            const State s0 = regularized_initial(inst.initial, k, eps);
            const StagedRhs rhs = [&, k, eps](const State& s, int) {
                return rhs_regularized(s, inst.model, inst.potential, k, eps);
            };
            IntegrateResult run = integrate(s0, spec.horizon, spec.step, rhs, inst.model,
                                            inst.potential, diag);
            rung.completed = true;
            rung.series = std::move(run.series);
            rung.audit = inequality_audit(rung.series, diag.lambda1, inst.model.mu);
            rung.combined_bound = combined_bound(rung.series, rung.audit);
            finals[i] = run.final_state;
        } catch (const BlowupError& e) {
            rung.abort_reason = e.what();
        }
        report.rungs.push_back(std::move(rung));
    }

    // Reference state: the unregularized run in 2D, else the finest rung.
    State reference = finals.back();
    if (report.reference_is_unregularized) {
        IntegrateResult ref = integrate(inst.initial, spec.horizon, spec.step,
                                        full_rhs(inst.model, inst.potential), inst.model,
                                        inst.potential, diag);
        reference = ref.final_state;
    }
    for (std::size_t i = 0; i < rung_count; ++i)
        if (report.rungs[i].completed)
            report.rungs[i].distance_to_reference = state_distance(finals[i], reference);

    report.distances_monotone = true;
    report.all_audits_passed = true;
    double min_bound = std::numeric_limits<double>::infinity();
    double max_bound = 0.0;
    for (std::size_t i = 0; i < rung_count; ++i) {
        const LadderRung& rung = report.rungs[i];
        if (!rung.completed) {
            report.distances_monotone = false;
            report.all_audits_passed = false;
            continue;
        }
        if (i > 0 && report.rungs[i - 1].completed &&
            rung.distance_to_reference >
                report.rungs[i - 1].distance_to_reference * (1.0 + 1e-12))
            report.distances_monotone = false;
        if (!rung.audit.passed) report.all_audits_passed = false;
        min_bound = std::min(min_bound, rung.combined_bound);
        max_bound = std::max(max_bound, rung.combined_bound);
    }
    report.audit_spread = min_bound > 0.0 ? max_bound / min_bound : 0.0;
    return report;
}

InitialApproxReport check_initial_approx(const ScalarField& n0, const ScalarField& c0,
                                         const VectorField& u0, CutoffParam k,
                                         MollifierParam eps) {
    InitialApproxReport rep;
    const ScalarField n_reg = mollify(n0, eps);
    const ScalarField c_reg = mollify(c0, eps);
    const VectorField u_reg = leray_project(cutoff(mollify(u0, eps), k));

    rep.n_l1_error = lp_norm(n_reg - n0, 1.0);
    VectorField grad_diff = gradient(c_reg) - gradient(c0);
    rep.grad_c_l1_error = lp_norm(grad_diff, 1.0);
    double u_err = 0.0;
    for (int a = 0; a < u0.dim(); ++a) {
        const double e = lp_norm(u_reg[a] - u0[a], 2.0);
        u_err += e * e;
    }
    rep.u_l2_sq_error = u_err;
    rep.grad_c_l2 = lp_norm(gradient(c_reg), 2.0);
    rep.grad_c_l2_original = lp_norm(gradient(c0), 2.0);
    rep.moment = weighted_moment(n_reg);
    rep.moment_original = weighted_moment(n0);
    const double tol = 1e-10;
    rep.bounds_hold = rep.grad_c_l2 <= rep.grad_c_l2_original + tol &&
                      rep.moment <= rep.moment_original * 1.02 + tol;
    return rep;
}

}  // namespace chemflow
