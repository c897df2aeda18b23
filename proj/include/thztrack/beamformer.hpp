// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "thztrack/channel.hpp"

namespace thztrack
{

// (v, omega, beta) triple of the variable-beamwidth precoder. v in [0,1]
// widens the beam, omega recenters the sinc taper across the array, beta
// scales to the power budget.
struct BeamParams
{
    double v = 0.0;
    double omega = 0.0;
    double beta = 0.0;
};

// sin(x)/x with the removable singularity handled by a series branch.
double sinc(double x);

// Real taper entries sinc((omega - pi n) v), n = 0..n_tx-1.
std::vector<double> sinc_taper(double v, double omega, int n_tx);

// beta saturating the power constraint with equality:
// beta^2 * sum sinc^2((omega - pi n) v) = p_max.
double saturate_power(double v, double omega, double p_max_w, int n_tx);

// Variable-beamwidth precoder, entry n = beta sinc((omega - pi n) v)
// exp(j pi n sin(phi_hat)). v = 0 degenerates to the conjugate beam.
CVec sinc_precoder(const BeamParams& params, double phi_hat_rad, int n_tx);

// Maximum-ratio transmission toward phi_hat; ||f||^2 = p_max.
CVec conjugate_precoder(double phi_hat_rad, int n_tx, double p_max_w);

// Constant-modulus quadratic-phase beam; zeta = 0 reduces to the
// conjugate precoder.
CVec chirp_precoder(double zeta, double phi_hat_rad, int n_tx, double p_max_w);

// Conjugate beam over the first n_active antennas only, full power.
CVec partial_precoder(int n_active, double phi_hat_rad, int n_tx, double p_max_w);

// Half-power beamwidth (radians, boresight) of an n_active-element
// uniform subarray, measured from the Dirichlet pattern. Returns pi when
// the pattern never drops 3 dB in the front half-space.
double subarray_hpbw(int n_active);

// Largest active-antenna count whose half-power beamwidth still covers
// +-sigma_eps, clamped to [1, n_tx].
int partial_activation_count(double sigma_eps_rad, int n_tx);

CVec partial_activation_precoder(double sigma_eps_rad, double phi_hat_rad, int n_tx, double p_max_w);

// Numerically measured half-power beamwidth of an arbitrary precoder
// around its gain peak at phi_hat (radians).
double measure_hpbw(const CVec& precoder, double phi_hat_rad);

enum class ActivationThreshold
{
    amplitude, // |f_n| >= thr * max|f_m|   (default)
    power      // |f_n|^2 >= thr * max|f_m|^2
};

// Indices of antennas kept on under the threshold-based selection rule.
std::vector<int> active_antennas(const CVec& precoder, double threshold_fraction,
                                 ActivationThreshold mode = ActivationThreshold::amplitude);

} // namespace thztrack
