#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "slipstream/boundary.hpp"

namespace slipstream {

struct ScenarioParams {
    std::map<std::string, double> values;
    std::filesystem::path table; // custom_table source
    unsigned seed = 0;

    double get(const std::string& key, double fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
};

struct Scenario {
    std::string name;
    std::string description;
    BoundaryData (*make)(const DomainGeometry&, const Grid&, const ScenarioParams&);
};

/// Built-in scenarios in stable alphabetical order.
const std::vector<Scenario>& scenario_registry();

const Scenario* find_scenario(const std::string& name);

BoundaryData make_scenario_data(const std::string& name, const DomainGeometry& geom,
                                const Grid& grid, const ScenarioParams& params);

} // namespace slipstream
