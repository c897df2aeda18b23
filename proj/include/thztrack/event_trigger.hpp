// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "thztrack/objectives.hpp"
#include "thztrack/optimizer.hpp"

namespace thztrack
{

// Virtual-queue backlog enforcing the long-term pilot budget. z is the
// backlog, r_q the average overhead budget, mu the drift weight.
struct TriggerState
{
    double z = 0.0;
    double r_q = 0.05;
    double mu = 0.5;
};

// Best objective value attainable with fresh CSI, discounted by the
// estimated blockage probability.
double g_perfect(double d_hat_m, double p_block, double alpha, const ObjectiveConfig& cfg);

// Stored objective value of the precomputed beam for the current belief;
// rejects tables built for a different scenario.
double g_imperfect(const LookupTable& table, const ObjectiveConfig& cfg, double d_hat_m, double sigma_eff_rad);

// Pilot is requested when the backlog-adjusted cost of spending one is
// below the objective gain of fresh CSI (strict inequality).
bool trigger_decision(const TriggerState& state, double g_p, double g_imp);

// z' = max(0, z + q - r_q).
TriggerState queue_update(const TriggerState& state, bool q);

} // namespace thztrack
