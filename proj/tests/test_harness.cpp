#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chemflow/ladder.hpp"
#include "chemflow/runner.hpp"
#include "chemflow/scenario.hpp"
#include "chemflow/snapshot.hpp"

using namespace chemflow;
namespace fs = std::filesystem;

namespace {
GridSpec grid2d(int n = 64) {
    GridSpec g;
    g.dim = 2;
    g.points_per_axis = n;
    return g;
}

fs::path scratch_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("chemflow_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::stringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
    for (const auto& m : msgs)
        if (m.find(needle) != std::string::npos) return true;
    return false;
}
}  // namespace

TEST_CASE("snapshot round trip is bit-exact") {
    const fs::path dir = scratch_dir("snapshot");
    const GridSpec g = grid2d(32);
    std::vector<std::pair<std::string, ScalarField>> fields;
    fields.emplace_back("n", random_band_limited(g, 11, 10));
    fields.emplace_back("c", random_band_limited(g, 12, 10));
    fields.emplace_back("u0", ScalarField::from_function(g, [](const std::array<double, 3>& x) {
                            return std::sin(x[0]) * std::cos(x[1]) + 1.0 / 3.0;
                        }));
    const fs::path path = dir / "a.chfl";
    write_snapshot(path.string(), g, fields);

    GridSpec g2;
    auto back = read_snapshot(path.string(), g2);
    CHECK(g2.dim == g.dim);
    CHECK(g2.points_per_axis == g.points_per_axis);
    CHECK(g2.side_length[0] == g.side_length[0]);
    REQUIRE(back.size() == fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        CHECK(back[i].first == fields[i].first);
        const auto& a = fields[i].second.values();
        const auto& b = back[i].second.values();
        REQUIRE(a.size() == b.size());
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]);
    }

    // rewriting what was read reproduces the file byte for byte
    const fs::path path2 = dir / "b.chfl";
    write_snapshot(path2.string(), g2, back);
    CHECK(slurp(path) == slurp(path2));

    CHECK_THROWS_AS(read_snapshot((dir / "missing.chfl").string(), g2), std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("config parsing and overrides") {
    const std::string text = R"({
        "mode": "simulate",
        "scenario": "heat_decoupled",
        "horizon": 0.5,
        "grid": {"dim": 2, "points_per_axis": 32},
        "solver": {"dt": "auto", "cfl_safety": 0.3},
        "model": {"family": "rational", "kappa1": 2.0}
    })";
    SUBCASE("values land in the right fields") {
        RunConfig cfg = parse_config_text(text);
        CHECK(cfg.mode == "simulate");
        CHECK(cfg.scenario == "heat_decoupled");
        CHECK(cfg.horizon == 0.5);
        CHECK(cfg.grid_given);
        CHECK(cfg.grid.points_per_axis == 32);
        CHECK(cfg.step.dt == 0.0);  // auto
        CHECK(cfg.step.cfl_safety == 0.3);
        CHECK(cfg.model_family == "rational");
        CHECK(cfg.kappa1 == 2.0);
        CHECK(validate_config(cfg).empty());
    }
    SUBCASE("dotted overrides take precedence") {
        RunConfig cfg = parse_config_text(
            text, {"solver.dt=1e-3", "grid.points_per_axis=64", "scenario=taylor_green",
                   "model.family=zero"});
        CHECK(cfg.step.dt == 1e-3);
        CHECK(cfg.grid.points_per_axis == 64);
        CHECK(cfg.scenario == "taylor_green");
        CHECK(cfg.model_family == "zero");
    }
    SUBCASE("malformed input is rejected") {
        CHECK_THROWS_AS(parse_config_text("{not json"), std::runtime_error);
        CHECK_THROWS_AS(parse_config_text(text, {"solver.dt"}), std::runtime_error);
        CHECK_THROWS_AS(parse_config_text(R"({"solver": {"dt": "fast"}})"), std::runtime_error);
        CHECK_THROWS_AS(parse_config_text(R"({"horizon": "long"})"), std::runtime_error);
    }
    SUBCASE("validation enumerates every violated key") {
        RunConfig cfg = parse_config_text(text);
        cfg.step.dt = -1.0;
        cfg.mode = "replay";
        cfg.scenario = "nonsense";
        cfg.picard.steps = 1;
        cfg.ladder_eps_values = {0.1, 0.2};
        auto bad = validate_config(cfg);
        CHECK(any_contains(bad, "solver.dt"));
        CHECK(any_contains(bad, "mode"));
        CHECK(any_contains(bad, "scenario"));
        CHECK(any_contains(bad, "picard.steps"));
        CHECK(any_contains(bad, "ladder.eps_values"));
    }
    SUBCASE("resolved config re-parses to the same values") {
        RunConfig cfg = parse_config_text(text, {"solver.dt=1e-3"});
        RunConfig again = parse_config_text(resolved_config_json(cfg));
        CHECK(again.mode == cfg.mode);
        CHECK(again.scenario == cfg.scenario);
        CHECK(again.step.dt == cfg.step.dt);
        CHECK(again.grid.points_per_axis == cfg.grid.points_per_axis);
        CHECK(again.kappa1 == cfg.kappa1);
    }
}

TEST_CASE("csv schema") {
    const auto& cols = diagnostics_columns();
    const std::vector<std::string> expected{
        "time",        "mass",         "c_l1",          "c_l2",
        "c_linf",      "entropy",      "neg_entropy",   "moment",
        "grad_sqrt_n_sq", "grad_c_sq", "lap_c_sq",      "kinetic",
        "grad_u_sq",   "potential_coupling", "energy_F", "grad_c_inf",
        "acc_grad_c_inf", "serrin_acc", "omega_l2",     "min_n",
        "min_c",       "max_c",        "x_m_norm",      "lambda1",
        "mu"};
    CHECK(cols == expected);

    std::ostringstream os;
    write_csv_header(os);
    DiagnosticsRecord r;
    r.time = 1.0 / 3.0;
    r.mass = 4.0 * M_PI * M_PI;
    write_csv_row(os, r);
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    // comma-separated, one value per column, full double precision
    auto count_fields = [](const std::string& line) {
        return 1 + std::count(line.begin(), line.end(), ',');
    };
    CHECK(count_fields(header) == static_cast<long>(expected.size()));
    CHECK(count_fields(row) == static_cast<long>(expected.size()));
    CHECK(row.substr(0, row.find(',')) == "0.33333333333333331");
}

TEST_CASE("simulate run writes a complete artifact set") {
    const fs::path dir = scratch_dir("simulate");
    RunConfig cfg = parse_config_text(R"({
        "mode": "simulate",
        "scenario": "heat_decoupled",
        "horizon": 0.01,
        "snapshot_stride": 5,
        "grid": {"dim": 2, "points_per_axis": 32},
        "solver": {"dt": 1e-3}
    })");
    cfg.output_dir = dir.string();
    RunResult res = run(cfg);
    CHECK(res.status == kExitOk);

    // 10 steps -> 11 rows after the header
    std::istringstream csv(slurp(dir / "diagnostics.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 11);

    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(slurp(dir / "manifest.json").find("\"status\": \"ok\"") != std::string::npos);
    CHECK(fs::exists(dir / "snapshot_000000.chfl"));
    CHECK(fs::exists(dir / "snapshot_000002.chfl"));
    GridSpec g;
    auto fields = read_snapshot((dir / "snapshot_000000.chfl").string(), g);
    REQUIRE(fields.size() == 4);
    CHECK(fields[0].first == "n");
    CHECK(fields[1].first == "c");
    fs::remove_all(dir);
}

TEST_CASE("invalid configuration exits with the config code") {
    const fs::path dir = scratch_dir("badcfg");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.step.dt = -1.0;
    RunResult res = run(cfg);
    CHECK(res.status == kExitConfigError);
    CHECK(res.message.find("solver.dt") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("identical configurations reproduce byte-identical output") {
    RunConfig cfg = parse_config_text(R"({
        "mode": "simulate",
        "scenario": "gaussian_drop",
        "horizon": 0.02,
        "grid": {"dim": 2, "points_per_axis": 32},
        "solver": {"dt": 1e-3}
    })");
    const fs::path d1 = scratch_dir("det1");
    const fs::path d2 = scratch_dir("det2");
    cfg.output_dir = d1.string();
    CHECK(run(cfg).status == kExitOk);
    cfg.output_dir = d2.string();
    CHECK(run(cfg).status == kExitOk);
    CHECK(slurp(d1 / "diagnostics.csv") == slurp(d2 / "diagnostics.csv"));
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("picard mode writes its report and final state") {
    const fs::path dir = scratch_dir("picard");
    RunConfig cfg = parse_config_text(R"({
        "mode": "picard",
        "scenario": "gaussian_drop",
        "grid": {"dim": 2, "points_per_axis": 32},
        "picard": {"horizon": 0.01, "steps": 8, "tol": 1e-9}
    })");
    cfg.output_dir = dir.string();
    RunResult res = run(cfg);
    CHECK(res.status == kExitOk);
    CHECK(slurp(dir / "picard_report.json").find("\"converged\": true") != std::string::npos);
    GridSpec g;
    auto fields = read_snapshot((dir / "picard_final.chfl").string(), g);
    CHECK(fields.size() == 4);
    fs::remove_all(dir);
}

TEST_CASE("regularized initial data approximates the original") {
    const GridSpec g = grid2d(64);
    // non-constant oxygen and a rotational flow so every error channel is live
    const ScalarField n0 = find_scenario("gaussian_drop").make(g).initial.n;
    const ScalarField c0 = ScalarField::from_function(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.2 * std::sin(x[0]) * std::cos(x[1]);
    });
    const VectorField u0(ScalarField::from_function(g,
                                                    [](const std::array<double, 3>& x) {
                                                        return std::sin(x[0]) * std::cos(x[1]);
                                                    }),
                         ScalarField::from_function(g, [](const std::array<double, 3>& x) {
                             return -std::cos(x[0]) * std::sin(x[1]);
                         }));

    SUBCASE("vanishing regularization leaves the data unchanged") {
        InitialApproxReport rep = check_initial_approx(n0, c0, u0, {1e6}, {1e-8});
        CHECK(rep.n_l1_error <= 1e-8);
        CHECK(rep.grad_c_l1_error <= 1e-8);
        CHECK(rep.u_l2_sq_error <= 1e-8);
        CHECK(rep.bounds_hold);
    }
    SUBCASE("errors decrease along the ladder and the bounds hold") {
        const double ks[] = {16.0, 64.0, 256.0};
        const double eps[] = {0.2, 0.1, 0.05};
        double prev_n = 1e30, prev_c = 1e30;
        for (int i = 0; i < 3; ++i) {
            InitialApproxReport rep = check_initial_approx(n0, c0, u0, {ks[i]}, {eps[i]});
            CHECK(rep.bounds_hold);
            CHECK(rep.grad_c_l2 <= rep.grad_c_l2_original * (1.0 + 1e-10));
            CHECK(rep.n_l1_error < prev_n);
            CHECK(rep.grad_c_l1_error < prev_c);
            prev_n = rep.n_l1_error;
            prev_c = rep.grad_c_l1_error;
            if (eps[i] == 0.1)
                CHECK(rep.moment <= rep.moment_original * 1.02);
        }
    }
}
