#include "chemflow/runner.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "chemflow/ladder.hpp"
#include "chemflow/scenario.hpp"
#include "chemflow/snapshot.hpp"

namespace chemflow {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

GridSpec resolve_grid(const RunConfig& cfg, const Scenario& sc) {
    if (cfg.grid_given) return cfg.grid;
    GridSpec grid;
    grid.dim = sc.default_dim;
    grid.points_per_axis = sc.default_points;
    return grid;
}

ScenarioInstance resolve_instance(const RunConfig& cfg, const Scenario& sc,
                                  const GridSpec& grid) {
    ScenarioInstance inst = sc.make(grid);
    if (cfg.model_family == "zero")
        inst.model = make_zero_family();
    else if (cfg.model_family == "rational")
        inst.model = make_rational_family(cfg.kappa1, cfg.c_star, cfg.mu);
    else if (cfg.model_family == "step")
        inst.model = make_step_family(cfg.kappa1, cfg.c_star, cfg.delta, cfg.mu);
    if (cfg.chi_scale != 1.0) inst.model = scale_chi(inst.model, cfg.chi_scale);
    if (cfg.chi_perturbation != 0.0)
        inst.model = add_chi_perturbation(inst.model, cfg.chi_perturbation, cfg.c_star,
                                          std::max(cfg.delta, 0.05));
    if (cfg.potential_kind == "zero")
        inst.potential = make_zero_potential(grid);
    else if (cfg.potential_kind == "gravity")
        inst.potential = make_gravity_potential(grid, cfg.potential_amplitude);
    else if (cfg.potential_kind == "radial")
        inst.potential = make_radial_potential(grid, cfg.potential_amplitude,
                                               cfg.potential_width);
    return inst;
}

void write_series_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& series) {
    std::ofstream os(path);
    write_csv_header(os);
    for (const auto& r : series) write_csv_row(os, r);
}

void write_state_snapshot(const fs::path& path, const State& s) {
    std::vector<std::pair<std::string, ScalarField>> fields;
    fields.emplace_back("n", s.n);
    fields.emplace_back("c", s.c);
    for (int a = 0; a < s.u.dim(); ++a)
        fields.emplace_back("u" + std::to_string(a), s.u[a]);
    write_snapshot(path.string(), s.n.grid(), fields);
}

void write_manifest(const fs::path& dir, const RunConfig& cfg, const std::string& status,
                    double wall_seconds) {
    json m;
    m["config"] = json::parse(resolved_config_json(cfg));
    m["status"] = status;
    m["wall_seconds"] = wall_seconds;
    m["version"] = "chemflow 1.0";
    const char* threads = std::getenv("CHEMFLOW_THREADS");
    m["threads"] = threads ? threads : "1";
    std::ofstream os(dir / "manifest.json");
    os << m.dump(2) << '\n';
}

// Post-run checks of the series-level guarantees; returns violation messages.
std::vector<std::string> series_violations(const std::vector<DiagnosticsRecord>& series) {
    std::vector<std::string> bad;
    if (series.empty()) return bad;
    const double mass0 = series.front().mass;
    double c_linf_prev = series.front().c_linf;
    double c_l2_prev = series.front().c_l2;
    for (const auto& r : series) {
        if (std::abs(r.mass - mass0) > 1e-10 * std::abs(mass0)) {
            bad.push_back("mass drift exceeded 1e-10 relative at t=" + std::to_string(r.time));
            break;
        }
    }
    for (const auto& r : series) {
        if (r.c_linf > c_linf_prev + 1e-6 * (1.0 + c_linf_prev)) {
            bad.push_back("max of c increased at t=" + std::to_string(r.time));
            break;
        }
        c_linf_prev = std::max(c_linf_prev, r.c_linf);
    }
    for (const auto& r : series) {
        if (r.c_l2 > c_l2_prev * (1.0 + 1e-8)) {
            bad.push_back("L2 norm of c increased at t=" + std::to_string(r.time));
            break;
        }
        c_l2_prev = r.c_l2;
    }
    return bad;
}

RunResult run_simulate(const RunConfig& cfg, const ScenarioInstance& inst, const fs::path& dir,
                       bool audit_mode) {
    DiagnosticsOptions diag;
    diag.lambda1 = cfg.lambda1;
    diag.sobolev_m = cfg.picard.sobolev_m;

    std::vector<DiagnosticsRecord> series;
    bool aborted = false;
    std::string abort_reason;
    State final_state = inst.initial;
    try {
        StagedRhs rhs = [&inst](const State& s, int) {
            return rhs_full(s, inst.model, inst.potential);
        };
        IntegrateResult res = integrate(inst.initial, cfg.horizon, cfg.step, rhs, inst.model,
                                        inst.potential, diag, cfg.snapshot_stride > 0,
                                        cfg.series_stride);
        series = std::move(res.series);
        final_state = res.final_state;
        if (cfg.snapshot_stride > 0) {
            int count = 0;
            for (std::size_t i = 0; i < res.trajectory.size();
                 i += static_cast<std::size_t>(cfg.snapshot_stride)) {
                char name[64];
                std::snprintf(name, sizeof(name), "snapshot_%06d.chfl", count++);
                write_state_snapshot(dir / name, res.trajectory[i]);
            }
        }
    } catch (const BlowupError& e) {
        aborted = true;
        abort_reason = e.what();
        series.push_back(e.last);
    }
    write_series_csv(dir / "diagnostics.csv", series);

    if (audit_mode) {
        const InequalityAudit audit = inequality_audit(series, cfg.lambda1, inst.model.mu);
        const BlowupReport monitor = blowup_monitor(series, aborted);
        json rep;
        rep["inequality"] = {{"c0", audit.c0},
                             {"c1", audit.c1},
                             {"fit_residual", audit.fit_residual},
                             {"passed", audit.passed}};
        rep["blowup"] = {{"acc_grad_c_inf", monitor.final_acc_grad_c_inf},
                         {"serrin_acc", monitor.final_serrin_acc},
                         {"max_x_m_norm", monitor.max_x_m_norm},
                         {"aborted", monitor.aborted},
                         {"criterion_consistent", monitor.criterion_consistent},
                         {"blowup_suspected", monitor.blowup_suspected}};
        std::ofstream os(dir / "audit_report.json");
        os << rep.dump(2) << '\n';
        if (!aborted && !audit.passed)
            return {kExitPropertyViolation, "energy inequality audit failed"};
    }
    if (aborted) return {kExitBlowup, abort_reason};

    const std::vector<std::string> bad = series_violations(series);
    if (!bad.empty()) return {kExitPropertyViolation, bad.front()};
    return {kExitOk, "completed " + std::to_string(series.size()) + " series rows"};
}

RunResult run_picard(const RunConfig& cfg, const ScenarioInstance& inst, const fs::path& dir) {
    auto dump = [&](const PicardReport& rep) {
        json r;
        r["iterate_count"] = rep.iterate_count;
        r["delta_norms"] = rep.delta_norms;
        r["contraction_ratios"] = rep.contraction_ratios;
        r["horizon"] = rep.horizon;
        r["sobolev_m"] = rep.sobolev_m;
        r["converged"] = rep.converged;
        std::ofstream os(dir / "picard_report.json");
        os << r.dump(2) << '\n';
    };
    try {
        auto [final_state, rep] = picard_solve(inst.initial, cfg.picard, inst.model,
                                               inst.potential);
        dump(rep);
        write_state_snapshot(dir / "picard_final.chfl", final_state);
        if (!rep.converged)
            return {kExitPropertyViolation, "iteration did not converge within max_iters"};
        return {kExitOk, "converged after " + std::to_string(rep.iterate_count) + " iterations"};
    } catch (const PicardError& e) {
        dump(e.report);
        return {kExitPropertyViolation, e.what()};
    }
}

RunResult run_ladder_mode(const RunConfig& cfg, const GridSpec& grid, const fs::path& dir) {
    LadderSpec spec;
    spec.grid = grid;
    spec.scenario_id = cfg.scenario;
    spec.horizon = cfg.ladder_horizon;
    spec.step = cfg.step;
    spec.diag.lambda1 = cfg.lambda1;
    spec.k_values = cfg.ladder_k_values;
    spec.eps_values = cfg.ladder_eps_values;
    const LadderReport report = run_ladder(spec);

    json r;
    r["reference_is_unregularized"] = report.reference_is_unregularized;
    r["distances_monotone"] = report.distances_monotone;
    r["all_audits_passed"] = report.all_audits_passed;
    r["audit_spread"] = report.audit_spread;
    r["rungs"] = json::array();
    for (std::size_t i = 0; i < report.rungs.size(); ++i) {
        const LadderRung& rung = report.rungs[i];
        r["rungs"].push_back({{"k", rung.k},
                              {"eps", rung.eps},
                              {"completed", rung.completed},
                              {"abort_reason", rung.abort_reason},
                              {"distance_to_reference", rung.distance_to_reference},
                              {"audit_c0", rung.audit.c0},
                              {"audit_c1", rung.audit.c1},
                              {"audit_passed", rung.audit.passed},
                              {"combined_bound", rung.combined_bound}});
        char name[64];
        std::snprintf(name, sizeof(name), "rung_%02zu.csv", i);
        write_series_csv(dir / name, rung.series);
    }
    std::ofstream os(dir / "ladder_report.json");
    os << r.dump(2) << '\n';
    if (!report.distances_monotone)
        return {kExitPropertyViolation, "ladder distances are not monotone"};
    if (!report.all_audits_passed)
        return {kExitPropertyViolation, "a rung failed the energy inequality audit"};
    return {kExitOk, "ladder completed"};
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    const std::vector<std::string> violations = validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  " + v;
        return {kExitConfigError, msg};
    }
    const auto start = std::chrono::steady_clock::now();
    const Scenario& sc = find_scenario(cfg.scenario);
    const GridSpec grid = resolve_grid(cfg, sc);
    try {
        grid.validate();
    } catch (const std::exception& e) {
        return {kExitConfigError, e.what()};
    }

    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return {kExitConfigError, "output: cannot create directory " + cfg.output_dir};

    RunResult result;
    try {
        const ScenarioInstance inst = resolve_instance(cfg, sc, grid);
        if (cfg.mode == "simulate")
            result = run_simulate(cfg, inst, dir, false);
        else if (cfg.mode == "audit")
            result = run_simulate(cfg, inst, dir, true);
        else if (cfg.mode == "picard")
            result = run_picard(cfg, inst, dir);
        else
            result = run_ladder_mode(cfg, grid, dir);
    } catch (const BlowupError& e) {
        result = {kExitBlowup, e.what()};
    } catch (const std::exception& e) {
        result = {kExitConfigError, e.what()};
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string status = result.status == kExitOk           ? "ok"
                               : result.status == kExitBlowup     ? "blow-up"
                               : result.status == kExitConfigError ? "config-error"
                                                                    : "property-violation";
    write_manifest(dir, cfg, status, wall);
    return result;
}

}  // namespace chemflow
