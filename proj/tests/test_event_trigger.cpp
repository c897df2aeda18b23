// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "thztrack/event_trigger.hpp"

using namespace thztrack;

TEST_CASE("g_perfect branches")
{
    ObjectiveConfig cfg; // r_min 10 Gbps, reference link
    // in range: alpha - p_b
    CHECK(g_perfect(8.0, 0.0, 0.7, cfg) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(g_perfect(8.0, 0.0114, 0.6, cfg) == doctest::Approx(0.5886).epsilon(1e-12));
    // out of range (r_max(15 m) < 10 Gbps): (1 - p_b) alpha - (1 - alpha)
    CHECK(g_perfect(15.0, 0.2, 1.0, cfg) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(g_perfect(15.0, 0.1, 0.6, cfg) == doctest::Approx(0.9 * 0.6 - 0.4).epsilon(1e-12));

    CHECK_THROWS_AS(g_perfect(8.0, 1.5, 0.6, cfg), std::invalid_argument);
}

TEST_CASE("trigger decision")
{
    TriggerState s{0.0, 0.05, 0.5};
    // nothing to gain: LHS 0.45 > 0
    CHECK_FALSE(trigger_decision(s, 0.6, 0.6));
    // fires exactly when the gain exceeds 0.225
    CHECK(trigger_decision(s, 0.6, 0.6 - 0.2251));
    CHECK_FALSE(trigger_decision(s, 0.6, 0.6 - 0.2249));
    // strict inequality at the boundary
    CHECK_FALSE(trigger_decision(s, 0.825, 0.6));

    // large backlog suppresses triggering entirely
    TriggerState deep{50.0, 0.05, 0.5};
    CHECK_FALSE(trigger_decision(deep, 1.0, -1.0));

    // monotone in the gain at fixed backlog
    for (double z : {0.0, 0.3, 1.7})
    {
        TriggerState st{z, 0.05, 0.5};
        bool prev = false;
        for (double gap = -0.5; gap <= 1.5; gap += 0.01)
        {
            bool q = trigger_decision(st, 0.5 + gap, 0.5);
            if (prev)
                CHECK(q); // once on, stays on as the gap grows
            prev = q;
        }
    }
}

TEST_CASE("queue update")
{
    TriggerState s{0.0, 0.05, 0.5};
    TriggerState after = queue_update(s, true);
    CHECK(after.z == doctest::Approx(0.95).epsilon(1e-15));

    CHECK(queue_update(s, false).z == 0.0); // clamp at zero

    // 0.95 drains to exactly zero in 19 idle slots
    TriggerState t{0.95, 0.05, 0.5};
    for (int i = 0; i < 19; ++i)
        t = queue_update(t, false);
    CHECK(t.z == 0.0);

    // budget identity: sum(q) / T <= r_q + z_T / T over any horizon
    TriggerState u{0.0, 0.05, 0.5};
    int pilots = 0;
    const int horizon = 1000;
    for (int k = 0; k < horizon; ++k)
    {
        bool q = (k % 7) == 0; // arbitrary schedule
        pilots += q ? 1 : 0;
        u = queue_update(u, q);
        CHECK(u.z >= 0.0);
    }
    CHECK(static_cast<double>(pilots) / horizon <= u.r_q + u.z / horizon + 1e-12);
}
