// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "thztrack/quadrature.hpp"

using namespace thztrack;

TEST_CASE("gauss-legendre nodes reproduce the classic 5-point rule")
{
    QuadratureRule r = gauss_legendre(5);
    // reference values of the order-5 rule
    CHECK(r.nodes[2] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.nodes[3] == doctest::Approx(0.5384693101056831).epsilon(1e-13));
    CHECK(r.nodes[4] == doctest::Approx(0.9061798459386640).epsilon(1e-13));
    CHECK(r.weights[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-13));
    CHECK(r.weights[3] == doctest::Approx(0.4786286704993665).epsilon(1e-13));
    CHECK(r.weights[4] == doctest::Approx(0.2369268850561891).epsilon(1e-13));
}

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly")
{
    for (int n : {2, 4, 8, 16})
    {
        QuadratureRule r = gauss_legendre(n);
        double sum_w = 0.0, moment = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
        {
            sum_w += r.weights[i];
            moment += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
        }
        CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(moment == doctest::Approx(2.0 / (2.0 * n - 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("composite rule covers the window and resolves fine structure")
{
    QuadratureRule r = composite_gauss_legendre(0.8, 64, 64);
    CHECK(r.nodes.size() >= 64);
    double sum_w = 0.0;
    for (std::size_t i = 0; i < r.weights.size(); ++i)
    {
        CHECK(r.nodes[i] > -0.8);
        CHECK(r.nodes[i] < 0.8);
        sum_w += r.weights[i];
    }
    CHECK(sum_w == doctest::Approx(1.6).epsilon(1e-12));

    // oscillatory integrand at the array-factor scale: compare against the
    // analytic value of int cos(64 pi x / 2) ... use sin envelope instead
    auto f = [](double x) { return std::cos(32.0 * M_PI * x); };
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(r.nodes[i]);
    double exact = 2.0 * std::sin(32.0 * M_PI * 0.8) / (32.0 * M_PI);
    CHECK(acc == doctest::Approx(exact).epsilon(1e-8));

    // min_nodes floor honored for narrow windows
    QuadratureRule tight = composite_gauss_legendre(1e-3, 64, 128);
    CHECK(tight.nodes.size() >= 128);
}
