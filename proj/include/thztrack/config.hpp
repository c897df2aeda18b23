// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thztrack/optimizer.hpp"
#include "thztrack/tracking.hpp"

namespace thztrack
{

// Grid specification for lookup-table builds.
struct LutGridSpec
{
    double d_min_m = 0.5;
    double d_max_m = 15.0;
    double d_step_m = 0.25;
    double sigma_min_deg = 0.0;
    double sigma_max_deg = 10.0;
    double sigma_step_deg = 0.25;

    std::vector<double> d_grid() const;
    std::vector<double> sigma_grid_rad() const;
};

struct AppConfig
{
    ScenarioConfig scenario;
    PsoConfig pso;
    LutGridSpec lut_grid;
};

AppConfig default_config();

// Flat key-value text with one level of [section] nesting. Unknown keys
// and constraint violations raise errors naming the key; an empty file
// yields the built-in defaults. Powers are accepted in dBm and converted
// at this boundary.
AppConfig parse_config_text(const std::string& text);
AppConfig parse_config(const std::string& path);

// Fully resolved key=value pairs, embedded into every output file header.
std::vector<std::pair<std::string, std::string>> resolved_entries(const AppConfig& cfg);

} // namespace thztrack
