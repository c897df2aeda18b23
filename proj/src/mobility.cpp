// SPDX-License-Identifier: Apache-2.0

#include "thztrack/mobility.hpp"

#include <stdexcept>

namespace thztrack
{

Vec2 random_walk_step(const Vec2& position_m, double step_std_m, Rng& rng)
{
    double dx = step_std_m * rng.gaussian();
    double dy = step_std_m * rng.gaussian();
    return {position_m.x + dx, position_m.y + dy};
}

BeliefState belief_update(const BeliefState& belief, const std::optional<Vec2>& observed_position)
{
    BeliefState next = belief;
    if (observed_position)
    {
        if (!(std::hypot(observed_position->x, observed_position->y) > 0.0))
            throw std::invalid_argument("belief_update: observed position must have positive distance");
        next.est_position_m = *observed_position;
        next.slots_since_pilot = 0;
    }
    else
    {
        next.slots_since_pilot += 1;
    }
    return next;
}

double aod_error_pdf(double sigma_eps_rad, double eps_rad)
{
    if (!(sigma_eps_rad > 0.0))
        throw std::domain_error("aod_error_pdf: sigma must be positive");
    double z = eps_rad / sigma_eps_rad;
    return std::exp(-0.5 * z * z) / (sigma_eps_rad * std::sqrt(2.0 * M_PI));
}

} // namespace thztrack
