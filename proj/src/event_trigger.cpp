// SPDX-License-Identifier: Apache-2.0

#include "thztrack/event_trigger.hpp"

#include <algorithm>
#include <stdexcept>

namespace thztrack
{

double g_perfect(double d_hat_m, double p_block, double alpha, const ObjectiveConfig& cfg)
{
    if (!(p_block >= 0.0 && p_block <= 1.0))
        throw std::invalid_argument("g_perfect: p_block must lie in [0, 1]");
    if (r_max(d_hat_m, cfg.link) >= cfg.r_min_bps)
        return alpha - p_block;
    return (1.0 - p_block) * alpha - (1.0 - alpha);
}

double g_imperfect(const LookupTable& table, const ObjectiveConfig& cfg, double d_hat_m, double sigma_eff_rad)
{
    if (table.scenario_fingerprint != scenario_fingerprint(cfg))
        throw std::runtime_error("g_imperfect: lookup table fingerprint does not match the active scenario");
    return lut_query(table, d_hat_m, sigma_eff_rad).cell.g_alpha;
}

bool trigger_decision(const TriggerState& state, double g_p, double g_imp)
{
    if (!(state.mu > 0.0))
        throw std::invalid_argument("trigger_decision: mu must be positive");
    return state.z - state.r_q + 0.5 < (g_p - g_imp) / state.mu;
}

TriggerState queue_update(const TriggerState& state, bool q)
{
    TriggerState next = state;
    next.z = std::max(0.0, state.z + (q ? 1.0 : 0.0) - state.r_q);
    return next;
}

} // namespace thztrack
