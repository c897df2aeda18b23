// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>

#include "thztrack/beamformer.hpp"

using namespace thztrack;

TEST_CASE("sinc continuity at removable singularities")
{
    CHECK(sinc(0.0) == 1.0);
    // series branch must meet the sin branch smoothly
    CHECK(sinc(1e-6 * 0.999999) == doctest::Approx(sinc(1e-6 * 1.000001)).epsilon(1e-12));
    CHECK(std::abs(sinc(1e-7) - 1.0) < 1e-14);

    // precoder continuous in v at v = 0
    BeamParams p0{0.0, 3.0, 1.0};
    BeamParams p1{1e-9, 3.0, 1.0};
    CVec f0 = sinc_precoder(p0, 0.3, 16);
    CVec f1 = sinc_precoder(p1, 0.3, 16);
    for (std::size_t i = 0; i < f0.size(); ++i)
        CHECK(std::abs(f0[i] - f1[i]) < 1e-12);

    // and in omega across omega = pi n
    for (int m : {0, 1, 7})
    {
        BeamParams lo{0.2, M_PI * m - 1e-9, 1.0};
        BeamParams hi{0.2, M_PI * m + 1e-9, 1.0};
        CVec a = sinc_precoder(lo, 0.0, 16);
        CVec b = sinc_precoder(hi, 0.0, 16);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(a[i] - b[i]) < 1e-8);
        // the recentered entry carries exactly beta
        CHECK(std::abs(sinc_precoder(BeamParams{0.2, M_PI * m, 0.7}, 0.0, 16)[static_cast<std::size_t>(m)]) ==
              doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("saturate_power meets the power constraint with equality")
{
    const int n = 64;
    CHECK(saturate_power(0.0, 0.0, 1.0, n) == doctest::Approx(1.0 / std::sqrt(64.0)).epsilon(1e-12));
    CHECK(saturate_power(0.0, 5.0, 2.0, n) == doctest::Approx(std::sqrt(2.0 / 64.0)).epsilon(1e-12));

    for (double v : {0.05, 0.1, 0.37, 0.8})
        for (double om : {0.0, 4.0, -50.0, 180.0})
        {
            double beta = saturate_power(v, om, 1.0, n);
            CVec f = sinc_precoder(BeamParams{v, om, beta}, 0.4, n);
            double p = 0.0;
            for (const auto& e : f)
                p += std::norm(e);
            CHECK(p == doctest::Approx(1.0).epsilon(1e-9));
        }

    CHECK(saturate_power(0.1, 0.0, 2.0, n) ==
          doctest::Approx(std::sqrt(2.0) * saturate_power(0.1, 0.0, 1.0, n)).epsilon(1e-12));
}

TEST_CASE("v = 0 degenerates to the conjugate beam")
{
    const int n = 32;
    double beta = saturate_power(0.0, 0.0, 1.0, n);
    CVec a = sinc_precoder(BeamParams{0.0, 0.0, beta}, 0.25, n);
    CVec b = conjugate_precoder(0.25, n, 1.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-12);
}

TEST_CASE("v = 0.1 magnitude profile matches the per-entry formula")
{
    const int n = 64;
    double beta = saturate_power(0.1, 0.0, 1.0, n);
    CVec f = sinc_precoder(BeamParams{0.1, 0.0, beta}, 0.0, n);
    for (int k = 0; k < n; ++k)
    {
        double x = 0.1 * M_PI * k;
        double expect = beta * (k == 0 ? 1.0 : std::abs(std::sin(x) / x));
        CHECK(std::abs(f[static_cast<std::size_t>(k)]) == doctest::Approx(expect).epsilon(1e-9));
    }
    // sinc zeros at n = 10, 20, ..., 60
    for (int k : {10, 20, 30, 40, 50, 60})
        CHECK(std::abs(f[static_cast<std::size_t>(k)]) < 1e-12);
}

TEST_CASE("conjugate beam gain at its own steering angle equals the power budget")
{
    // |a^H f| is capped at ||a|| ||f|| = sqrt(P); maximum-ratio transmission
    // attains the cap
    for (double phi : {-0.8, 0.0, 0.3})
        for (double p_max : {0.5, 1.0, 2.0})
        {
            CVec f = conjugate_precoder(phi, 64, p_max);
            CHECK(beam_gain(f, phi) == doctest::Approx(p_max).epsilon(1e-10));
            double norm2 = 0.0;
            for (const auto& e : f)
                norm2 += std::norm(e);
            CHECK(norm2 == doctest::Approx(p_max).epsilon(1e-12));
        }
}

TEST_CASE("beam gain basics")
{
    CVec zero(64, {0.0, 0.0});
    for (double phi : {-1.0, 0.0, 0.5})
        CHECK(beam_gain(zero, phi) == 0.0);

    // symmetric pattern for a real-symmetric taper steered at boresight
    double beta = saturate_power(0.1, 0.0, 1.0, 64);
    CVec f = sinc_precoder(BeamParams{0.1, 0.0, beta}, 0.0, 64);
    for (double delta : {0.01, 0.05, 0.2})
        CHECK(beam_gain(f, delta) == doctest::Approx(beam_gain(f, -delta)).epsilon(1e-9));
}

TEST_CASE("pattern power conservation")
{
    // integral of |a(s)^H f|^2 over sin-space equals 2 ||f||^2 / N
    const int n = 64;
    double beta = saturate_power(0.13, 11.0, 1.0, n);
    CVec f = sinc_precoder(BeamParams{0.13, 11.0, beta}, 0.2, n);
    double norm2 = 0.0;
    for (const auto& e : f)
        norm2 += std::norm(e);

    const int pts = 8193; // Simpson
    double h = 2.0 / (pts - 1);
    double acc = 0.0;
    for (int i = 0; i < pts; ++i)
    {
        double s = -1.0 + i * h;
        double w = (i == 0 || i == pts - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * beam_gain(f, std::asin(s));
    }
    acc *= h / 3.0;
    CHECK(acc == doctest::Approx(2.0 * norm2 / n).epsilon(1e-6));
}

TEST_CASE("active antennas under both threshold readings")
{
    const int n = 64;
    double beta = saturate_power(0.1, 0.0, 1.0, n);
    CVec f = sinc_precoder(BeamParams{0.1, 0.0, beta}, 0.0, n);

    // independent enumeration: |sin(0.1 pi k) / (0.1 pi k)| >= 0.05
    int expect_amp = 0, expect_pow = 0, expect_nonzero = 0;
    for (int k = 0; k < n; ++k)
    {
        double x = 0.1 * M_PI * k;
        double mag = k == 0 ? 1.0 : std::abs(std::sin(x) / x);
        expect_amp += mag >= 0.05 ? 1 : 0;
        expect_pow += mag * mag >= 0.05 ? 1 : 0;
        expect_nonzero += mag >= 1e-9 ? 1 : 0;
    }
    CHECK(expect_amp == 40);     // one boundary entry above the reported 39
    CHECK(expect_pow == 9);
    CHECK(expect_nonzero == 58); // six taper zeros at multiples of ten

    CHECK(static_cast<int>(active_antennas(f, 0.05).size()) == expect_amp);
    CHECK(static_cast<int>(active_antennas(f, 0.05, ActivationThreshold::power).size()) == expect_pow);
    CHECK(static_cast<int>(active_antennas(f, 1e-9).size()) == expect_nonzero);

    // uniform-magnitude precoder keeps the full array for any threshold < 1
    CVec u = conjugate_precoder(0.2, n, 1.0);
    CHECK(active_antennas(u, 0.999).size() == static_cast<std::size_t>(n));

    CVec zero(64, {0.0, 0.0});
    CHECK_THROWS_AS(active_antennas(zero, 0.05), std::domain_error);
}

TEST_CASE("chirp precoder")
{
    const int n = 64;
    CVec c0 = chirp_precoder(0.0, 0.3, n, 1.0);
    CVec conj = conjugate_precoder(0.3, n, 1.0);
    for (std::size_t i = 0; i < c0.size(); ++i)
        CHECK(std::abs(c0[i] - conj[i]) < 1e-12);

    for (double zeta : {0.5, 1.0, 2.0, 7.0})
    {
        CVec f = chirp_precoder(zeta, -0.2, n, 1.0);
        double p = 0.0;
        for (const auto& e : f)
            p += std::norm(e);
        CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    }

    // beamwidth grows with |zeta|
    double prev = measure_hpbw(chirp_precoder(0.0, 0.0, n, 1.0), 0.0);
    for (double zeta : {0.5, 1.0, 2.0})
    {
        double w = measure_hpbw(chirp_precoder(zeta, 0.0, n, 1.0), 0.0);
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("aperture monotonicity of the conjugate beamwidth")
{
    CHECK(measure_hpbw(conjugate_precoder(0.0, 64, 1.0), 0.0) <
          measure_hpbw(conjugate_precoder(0.0, 16, 1.0), 0.0));
}

TEST_CASE("sinc main lobe width is nondecreasing in v")
{
    double prev = 0.0;
    for (double v = 0.0; v <= 0.5 + 1e-9; v += 0.05)
    {
        double beta = saturate_power(v, 0.0, 1.0, 64);
        double w = measure_hpbw(sinc_precoder(BeamParams{v, 0.0, beta}, 0.0, 64), 0.0);
        CHECK(w >= prev - 1e-9);
        prev = w;
    }
}

TEST_CASE("partial activation")
{
    const int n = 64;
    // vanishing uncertainty keeps the full array
    CHECK(partial_activation_count(1e-9, n) == n);
    // absurdly large uncertainty clamps at a single element
    CHECK(partial_activation_count(2.0, n) == 1);

    // nonincreasing in sigma on a 0.5..10 degree grid
    int prev = n + 1;
    for (double deg = 0.5; deg <= 10.0 + 1e-9; deg += 0.5)
    {
        int na = partial_activation_count(deg * M_PI / 180.0, n);
        CHECK(na <= prev);
        CHECK(na >= 1);
        prev = na;
    }

    // selected subarray really covers 2 sigma with its half-power width
    for (double deg : {1.0, 3.0, 6.0})
    {
        double sig = deg * M_PI / 180.0;
        int na = partial_activation_count(sig, n);
        CHECK(subarray_hpbw(na) >= 2.0 * sig);
        if (na < n)
            CHECK(subarray_hpbw(na + 1) < 2.0 * sig);
    }

    CVec f = partial_activation_precoder(0.05, 0.3, n, 1.0);
    double p = 0.0;
    int nonzero = 0;
    for (const auto& e : f)
    {
        p += std::norm(e);
        nonzero += std::abs(e) > 0.0 ? 1 : 0;
    }
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nonzero == partial_activation_count(0.05, n));
}
