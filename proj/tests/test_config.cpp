// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <string>

#include "thztrack/config.hpp"

using namespace thztrack;

TEST_CASE("empty config yields the built-in defaults")
{
    AppConfig cfg = parse_config_text("");
    const LinkConfig& l = cfg.scenario.objective.link;
    CHECK(l.carrier_frequency_hz == 300e9);
    CHECK(l.bandwidth_hz == 10e9);
    CHECK(l.n_tx == 64);
    CHECK(l.n_rx == 16);
    CHECK(l.tx_power_w == doctest::Approx(1.0).epsilon(1e-12)); // 30 dBm
    CHECK(l.noise_psd_w_per_hz == doctest::Approx(3.981071705534986e-21).epsilon(1e-12));
    CHECK(l.slot_duration_s == 0.05);
    CHECK(l.blocker_density_per_m2 == 0.3);
    CHECK(l.blocker_speed_mps == 1.0);
    CHECK(l.unblocking_rate_hz == 3.0);
    CHECK(l.height_bs_m == 3.5);
    CHECK(l.height_ue_m == 1.5);
    CHECK(l.height_blocker_m == 1.8);
    CHECK(absorption_coefficient(l, 300e9) == doctest::Approx(0.0012).epsilon(1e-9));
    CHECK(cfg.scenario.step_std_m == 0.05);
    CHECK(cfg.scenario.r_q == 0.05);
    CHECK(cfg.scenario.mu == 0.5);
    CHECK(cfg.scenario.horizon_slots == 100000);
    CHECK(cfg.scenario.handover_min_m == 3.0);
    CHECK(cfg.scenario.handover_max_m == 7.0);
    CHECK(cfg.pso.swarm_size == 48);
    CHECK(cfg.pso.iterations == 120);
    CHECK(cfg.lut_grid.d_grid().size() == 59);
    CHECK(cfg.lut_grid.sigma_grid_rad().size() == 41);
}

TEST_CASE("dBm power conversion at the config boundary")
{
    AppConfig cfg = parse_config_text("[link]\ntx_power_dbm = 30\n");
    CHECK(cfg.scenario.objective.link.tx_power_w == doctest::Approx(1.0).epsilon(1e-12));

    AppConfig cfg2 = parse_config_text("[link]\ntx_power_dbm = 33\n");
    CHECK(cfg2.scenario.objective.link.tx_power_w == doctest::Approx(1.9952623149688795).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(parse_config_text("[link]\ntx_power_dbm = 30\ntx_power_w = 1.0\n"),
                         doctest::Contains("mutually exclusive"), std::runtime_error);
}

TEST_CASE("validation errors name the offending key")
{
    try
    {
        parse_config_text("[objective]\nalpha = 1.5\n");
        FAIL("expected error");
    }
    catch (const std::runtime_error& e)
    {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }

    try
    {
        parse_config_text("[link]\nfrequency = 3e11\n");
        FAIL("expected error");
    }
    catch (const std::runtime_error& e)
    {
        CHECK(std::string(e.what()).find("link.frequency") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config_text("[nosuch]\nx = 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("[sim]\nscheme = warp_drive\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[link]\nn_tx = grape\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config(std::string("/nonexistent/") + "cfg.ini"), std::runtime_error);
}

TEST_CASE("round trip of scheme names")
{
    for (Scheme s : {Scheme::proposed_event, Scheme::proposed_periodic, Scheme::nonrobust_event,
                     Scheme::nonrobust_periodic, Scheme::chirp_event, Scheme::chirp_periodic,
                     Scheme::partial_event, Scheme::partial_periodic})
        CHECK(scheme_from_name(scheme_name(s)) == s);
    CHECK(scheme_from_name("proposed-event") == Scheme::proposed_event); // hyphens accepted
}

TEST_CASE("overrides are applied and re-validated")
{
    AppConfig cfg = parse_config_text("[link]\n"
                                      "carrier_frequency_hz = 310e9\n"
                                      "n_tx = 32\n"
                                      "[objective]\n"
                                      "alpha = 0.25\n"
                                      "r_min_bps = 5e9\n"
                                      "[trigger]\n"
                                      "r_q = 0.1\n"
                                      "[sim]\n"
                                      "scheme = nonrobust_periodic\n"
                                      "period = 10\n"
                                      "master_seed = 99\n"
                                      "[pso]\n"
                                      "swarm_size = 12\n"
                                      "[lut]\n"
                                      "d_step_m = 0.5\n");
    CHECK(cfg.scenario.objective.link.carrier_frequency_hz == 310e9);
    CHECK(cfg.scenario.objective.link.n_tx == 32);
    CHECK(cfg.scenario.objective.alpha == 0.25);
    CHECK(cfg.scenario.objective.r_min_bps == 5e9);
    CHECK(cfg.scenario.r_q == 0.1);
    CHECK(cfg.scenario.scheme == Scheme::nonrobust_periodic);
    CHECK(cfg.scenario.period == 10);
    CHECK(cfg.scenario.master_seed == 99);
    CHECK(cfg.pso.swarm_size == 12);
    CHECK(cfg.lut_grid.d_grid().size() == 30);

    // resolved entries reflect the overrides (used in output headers)
    auto entries = resolved_entries(cfg);
    bool found = false;
    for (const auto& kv : entries)
        if (kv.first == "sim.scheme")
        {
            CHECK(kv.second == "nonrobust_periodic");
            found = true;
        }
    CHECK(found);
}
