#pragma once

#include <string>
#include <vector>

#include "chemflow/dynamics.hpp"

namespace chemflow {

/// A fully assembled experiment: initial data plus the constitutive
/// functions and potential it was designed for.
struct ScenarioInstance {
    State initial;
    ModelFunctions model;
    PotentialSpec potential;
};

struct Scenario {
    std::string id;
    std::string coverage_tag;
    int default_dim = 2;
    int default_points = 128;
    ScenarioInstance (*make)(const GridSpec& grid);
};

const std::vector<Scenario>& builtin_scenarios();
const Scenario& find_scenario(const std::string& id);

}  // namespace chemflow
