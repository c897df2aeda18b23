// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "thztrack/channel.hpp"

using namespace thztrack;

namespace
{
// table x-checked against a one-line evaluation of the gain formula in an
// independent script
constexpr double kGainD1 = 7.947472018019644e-05;
constexpr double kGainD8 = 9.892703292768415e-06;
constexpr double kThermalW = 3.9810717055349857e-11;
} // namespace

TEST_CASE("absorption coefficient interpolation")
{
    AbsorptionCurve single({{300e9, 0.0012}});
    CHECK(single.at(300e9) == doctest::Approx(0.0012).epsilon(1e-12));

    AbsorptionCurve flat({{100e9, 0.7}, {200e9, 0.7}});
    CHECK(flat.at(150e9) == doctest::Approx(0.7).epsilon(1e-12));

    AbsorptionCurve ramp({{300e9, 0.001}, {310e9, 0.003}});
    CHECK(ramp.at(305e9) == doctest::Approx(0.002).epsilon(1e-12));
    CHECK(ramp.at(300e9) == 0.001); // exact at nodes
    CHECK(ramp.at(310e9) == 0.003);

    CHECK_THROWS_AS((void)ramp.at(299e9), std::out_of_range);
    CHECK_THROWS_AS((void)ramp.at(311e9), std::out_of_range);
    CHECK_THROWS_AS(AbsorptionCurve({{2e11, 0.1}, {1e11, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(AbsorptionCurve({{1e11, -0.1}}), std::invalid_argument);
}

TEST_CASE("builtin absorption curve hits the reference coefficient at 300 GHz")
{
    LinkConfig cfg;
    CHECK(absorption_coefficient(cfg, 300e9) == doctest::Approx(0.0012).epsilon(1e-9));
    // line bump dominates near 325 GHz
    CHECK(absorption_coefficient(cfg, 325e9) > 20.0 * absorption_coefficient(cfg, 300e9));
}

TEST_CASE("path gain")
{
    CHECK(path_gain(1.0, 300e9, 0.0012) == doctest::Approx(kGainD1).epsilon(1e-12));
    CHECK(path_gain(8.0, 300e9, 0.0012) == doctest::Approx(kGainD8).epsilon(1e-12));
    // free-space 1/d law when absorption is off
    for (double d : {0.5, 1.0, 3.0, 12.0})
        CHECK(path_gain(d, 300e9, 0.0) / path_gain(2 * d, 300e9, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(path_gain(0.0, 300e9, 0.0012), std::domain_error);
    CHECK_THROWS_AS(path_gain(-1.0, 300e9, 0.0012), std::domain_error);

    // strictly decreasing in d and in K
    double prev = path_gain(0.5, 300e9, 0.0012);
    for (double d = 1.0; d <= 16.0; d += 0.5)
    {
        double g = path_gain(d, 300e9, 0.0012);
        CHECK(g < prev);
        prev = g;
    }
    CHECK(path_gain(5.0, 300e9, 0.01) < path_gain(5.0, 300e9, 0.0012));
}

TEST_CASE("noise power")
{
    LinkConfig cfg;
    double n8 = noise_power(cfg, 8.0);
    CHECK(n8 - kThermalW == doctest::Approx(9.440336644338938e-13).epsilon(1e-9));

    // zero absorption leaves only the thermal floor
    LinkConfig noabs = cfg;
    noabs.absorption_curve = AbsorptionCurve({{100e9, 0.0}, {450e9, 0.0}});
    for (double d : {1.0, 5.0, 20.0})
        CHECK(noise_power(noabs, d) == doctest::Approx(kThermalW).epsilon(1e-12));

    // the re-radiation term is monotone decreasing in d and approaches the
    // pure free-space factor
    double prev = noise_power(cfg, 2.0) - kThermalW;
    for (double d = 4.0; d <= 64.0; d *= 2.0)
    {
        double a = noise_power(cfg, d) - kThermalW;
        CHECK(a < prev);
        prev = a;
    }
    double d_large = 2000.0;
    double fs = kSpeedOfLight / (4.0 * M_PI * cfg.carrier_frequency_hz * d_large);
    CHECK(noise_power(cfg, d_large) - kThermalW ==
          doctest::Approx(cfg.tx_power_w * fs * fs).epsilon(1e-2));

    // absorption noise grows with K at fixed distance
    LinkConfig strong = cfg;
    strong.absorption_curve = AbsorptionCurve({{100e9, 0.01}, {450e9, 0.01}});
    CHECK(noise_power(strong, 8.0) > noise_power(cfg, 8.0));
    CHECK_THROWS_AS(noise_power(cfg, 0.0), std::domain_error);
}

TEST_CASE("steering vector")
{
    CVec a = steering_vector(0.0, 4);
    for (const auto& e : a)
    {
        CHECK(e.real() == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(e.imag() == doctest::Approx(0.0).epsilon(1e-15));
    }

    CVec b = steering_vector(M_PI / 6.0, 2);
    CHECK(b[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(b[1].real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b[1].imag() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    for (double phi : {-1.2, -0.3, 0.0, 0.7, 1.4})
        for (int n : {1, 2, 16, 64, 128})
        {
            double norm2 = 0.0;
            for (const auto& e : steering_vector(phi, n))
                norm2 += std::norm(e);
            CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-13));
        }
}

TEST_CASE("achievable rate")
{
    LinkConfig cfg;
    LinkState st{8.0, 0.0, false};

    // maximum-ratio precoder toward the true angle: the known perfect-CSI
    // value, frozen from an independent evaluation
    CVec f(static_cast<std::size_t>(cfg.n_tx));
    for (int n = 0; n < cfg.n_tx; ++n)
        f[static_cast<std::size_t>(n)] = std::sqrt(cfg.tx_power_w / cfg.n_tx);
    CHECK(achievable_rate(cfg, st, f) == doctest::Approx(17660987022.47286).epsilon(1e-9));

    LinkState blocked = st;
    blocked.blocked = true;
    CHECK(achievable_rate(cfg, blocked, f) == 0.0);

    // zero beam gain gives exactly zero rate: alternate-phase precoder is
    // orthogonal to the boresight steering vector for even N
    CVec orth(static_cast<std::size_t>(cfg.n_tx));
    for (int n = 0; n < cfg.n_tx; ++n)
        orth[static_cast<std::size_t>(n)] = (n % 2 == 0 ? 1.0 : -1.0) * std::sqrt(cfg.tx_power_w / cfg.n_tx);
    CHECK(achievable_rate(cfg, st, orth) == doctest::Approx(0.0).epsilon(1e-20));

    // global phase rotation leaves the rate invariant
    CVec rot = f;
    for (auto& e : rot)
        e *= std::polar(1.0, 1.234);
    CHECK(achievable_rate(cfg, st, rot) == doctest::Approx(achievable_rate(cfg, st, f)).epsilon(1e-12));

    // power contract
    CVec hot = f;
    for (auto& e : hot)
        e *= 1.01;
    CHECK_THROWS_AS(achievable_rate(cfg, st, hot), std::invalid_argument);
}

TEST_CASE("blockage arrival rate and step probabilities")
{
    LinkConfig cfg;
    CHECK(blockage_arrival_rate(cfg, 8.0) == doctest::Approx(0.22918311805232933).epsilon(1e-12));
    CHECK(blockage_arrival_rate(cfg, 16.0) ==
          doctest::Approx(2.0 * blockage_arrival_rate(cfg, 8.0)).epsilon(1e-12));

    LinkConfig none = cfg;
    none.blocker_density_per_m2 = 0.0;
    CHECK(blockage_arrival_rate(none, 5.0) == 0.0);

    CHECK(1.0 - blockage_probability(cfg, 8.0, true) == doctest::Approx(0.1392920235749422).epsilon(1e-12));

    // no blockers: unblocked stays unblocked with probability one
    Rng rng(42);
    bool b = false;
    for (int i = 0; i < 1000; ++i)
    {
        b = blockage_step(b, none, 5.0, rng);
        CHECK_FALSE(b);
    }
}

TEST_CASE("blockage long-run occupancy matches kappa / (kappa + mu)")
{
    LinkConfig cfg;
    const double d = 8.0;
    double kappa = blockage_arrival_rate(cfg, d);
    double p_stat = kappa / (kappa + cfg.unblocking_rate_hz);

    Rng rng(20240817);
    const int steps = 1000000;
    bool b = false;
    long blocked_count = 0;
    for (int i = 0; i < steps; ++i)
    {
        b = blockage_step(b, cfg, d, rng);
        blocked_count += b ? 1 : 0;
    }
    double frac = static_cast<double>(blocked_count) / steps;
    // correlated on/off samples: effective sample count is roughly
    // steps / (mean cycle length in slots), kept as a loose 3-sigma band
    double cycle_slots = (1.0 / kappa + 1.0 / cfg.unblocking_rate_hz) / cfg.slot_duration_s;
    double sigma = std::sqrt(p_stat * (1.0 - p_stat) / (steps / cycle_slots));
    CHECK(std::abs(frac - p_stat) < 3.0 * sigma);
}

TEST_CASE("link config validation names the offending field")
{
    LinkConfig cfg;
    cfg.height_blocker_m = 1.0; // below the UE
    try
    {
        cfg.validate();
        FAIL("expected validation error");
    }
    catch (const std::invalid_argument& e)
    {
        CHECK(std::string(e.what()).find("height") != std::string::npos);
    }
}
