#include "chemflow/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace chemflow {
namespace {

ScalarField gaussian_blob(const GridSpec& grid, double background, double amplitude,
                          double sigma) {
    std::array<double, 3> center{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) center[a] = 0.5 * grid.side_length[a];
    const double s2 = sigma * sigma;
    return ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            double y = x[a] - center[a];
            r2 += y * y;
        }
        return background + amplitude * std::exp(-0.5 * r2 / s2);
    });
}

ScenarioInstance make_heat_decoupled(const GridSpec& grid) {
    ScenarioInstance inst{
        State{ScalarField::from_function(
                  grid, [](const std::array<double, 3>& x) { return 1.0 + 0.5 * std::sin(x[0]); }),
              ScalarField::from_function(
                  grid, [](const std::array<double, 3>& x) { return 1.0 + 0.5 * std::sin(x[0]); }),
              VectorField(grid), 0.0},
        make_zero_family(), make_zero_potential(grid)};
    return inst;
}

ScenarioInstance make_taylor_green(const GridSpec& grid) {
    if (grid.dim != 2) throw std::invalid_argument("taylor_green requires a 2D grid");
    VectorField u(ScalarField::from_function(grid,
                                             [](const std::array<double, 3>& x) {
                                                 return std::sin(x[0]) * std::cos(x[1]);
                                             }),
                  ScalarField::from_function(grid, [](const std::array<double, 3>& x) {
                      return -std::cos(x[0]) * std::sin(x[1]);
                  }));
    return ScenarioInstance{State{ScalarField(grid), ScalarField(grid), std::move(u), 0.0},
                            make_zero_family(), make_zero_potential(grid)};
}

ScenarioInstance make_gaussian_drop(const GridSpec& grid) {
    return ScenarioInstance{
        State{gaussian_blob(grid, 0.1, 2.0, 0.5),
              ScalarField::from_function(grid, [](const std::array<double, 3>&) { return 1.0; }),
              VectorField(grid), 0.0},
        make_rational_family(1.0, 0.3, 1.0), make_gravity_potential(grid, 0.1)};
}

ScenarioInstance make_stress_chi(const GridSpec& grid) {
    ScenarioInstance inst = make_gaussian_drop(grid);
    inst.model = scale_chi(inst.model, 50.0);
    return inst;
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> scenarios = {
        {"heat_decoupled", "decoupled diffusion oracle", 2, 64, &make_heat_decoupled},
        {"taylor_green", "decaying vortex oracle", 2, 64, &make_taylor_green},
        {"gaussian_drop", "2d well-posedness reference", 2, 128, &make_gaussian_drop},
        {"gaussian_drop_3d", "3d regularized construction", 3, 64, &make_gaussian_drop},
        {"stress_chi", "singularity monitor stress", 2, 128, &make_stress_chi},
    };
    return scenarios;
}

const Scenario& find_scenario(const std::string& id) {
    for (const Scenario& s : builtin_scenarios())
        if (s.id == id) return s;
    throw std::invalid_argument("unknown scenario: " + id);
}

}  // namespace chemflow
