// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace thztrack
{

struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration on the
// Legendre recurrence).
QuadratureRule gauss_legendre(int n);

// Composite Gauss-Legendre on [-half_width, half_width] with panel count
// chosen so the pattern oscillation scale of an n_tx-element array is
// resolved; min_nodes is a floor on the total node count.
QuadratureRule composite_gauss_legendre(double half_width, int n_tx, int min_nodes, int panel_order = 8);

} // namespace thztrack
