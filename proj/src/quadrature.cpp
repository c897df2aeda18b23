// SPDX-License-Identifier: Apache-2.0

#include "thztrack/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace thztrack
{

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: order must be positive");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i)
    {
        // Chebyshev-based initial guess, then Newton on P_n(x)
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j)
            {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(double half_width, int n_tx, int min_nodes, int panel_order)
{
    if (!(half_width > 0.0))
        throw std::invalid_argument("composite_gauss_legendre: width must be positive");
    // array-factor lobes of an n_tx ULA are spaced 2/n_tx apart in
    // sin-angle space; two lobes per panel keeps the per-panel integrand
    // within reach of a low-order rule
    int by_lobes = static_cast<int>(std::ceil(half_width * n_tx / 2.0));
    int by_floor = (min_nodes + panel_order - 1) / panel_order;
    int panels = std::max(1, std::max(by_lobes, by_floor));

    QuadratureRule base = gauss_legendre(panel_order);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels * panel_order));
    rule.weights.reserve(static_cast<std::size_t>(panels * panel_order));
    double panel_width = 2.0 * half_width / panels;
    for (int p = 0; p < panels; ++p)
    {
        double a = -half_width + p * panel_width;
        double mid = a + 0.5 * panel_width;
        for (int k = 0; k < panel_order; ++k)
        {
            rule.nodes.push_back(mid + 0.5 * panel_width * base.nodes[static_cast<std::size_t>(k)]);
            rule.weights.push_back(0.5 * panel_width * base.weights[static_cast<std::size_t>(k)]);
        }
    }
    return rule;
}

} // namespace thztrack
