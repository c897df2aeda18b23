// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>

#include "thztrack/rng.hpp"

namespace thztrack
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

// BS-side belief of the user position. Holds the last observed position
// and the number of slots elapsed since that observation; all derived
// uncertainty measures follow from the random-walk step deviation.
struct BeliefState
{
    Vec2 est_position_m{};
    int slots_since_pilot = 0; // M
    double step_std_m = 0.05;  // sigma_m

    double est_distance_m() const { return std::hypot(est_position_m.x, est_position_m.y); }
    double est_aod_rad() const { return std::atan2(est_position_m.y, est_position_m.x); }
    double position_std_m() const { return std::sqrt(static_cast<double>(slots_since_pilot)) * step_std_m; }
    double aod_std_rad() const { return position_std_m() / est_distance_m(); }
    // effective deviation after folding the estimate direction into the
    // small-angle beam-offset variable
    double effective_aod_std_rad() const { return std::abs(std::cos(est_aod_rad())) * aod_std_rad(); }
};

// One random-walk step: independent zero-mean Gaussian increments on both
// coordinates.
Vec2 random_walk_step(const Vec2& position_m, double step_std_m, Rng& rng);

// Pilot slots reset the belief to the observation; otherwise the staleness
// counter advances.
BeliefState belief_update(const BeliefState& belief, const std::optional<Vec2>& observed_position);

// Zero-mean Gaussian density of the AoD estimation error.
double aod_error_pdf(double sigma_eps_rad, double eps_rad);

} // namespace thztrack
