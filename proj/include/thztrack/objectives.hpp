// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "thztrack/beamformer.hpp"
#include "thztrack/channel.hpp"

namespace thztrack
{

// Scalarization and smoothing knobs plus the physical scenario they refer
// to. alpha = 1 weights the normalized expected rate only, alpha = 0 the
// outage probability only.
struct ObjectiveConfig
{
    LinkConfig link;
    double alpha = 0.6;
    double r_min_bps = 10e9;
    double theta = 300.0; // logistic sharpness exponent
    int quadrature_nodes = 64;

    void validate() const;
};

struct ObjectiveValue
{
    double expected_rate_bps = 0.0;
    double outage_prob = 0.0; // smoothed value, consistent with g_alpha
    double g_alpha = 0.0;
};

// Rate achievable with perfect transmit CSI at the estimated distance.
double r_max(double d_hat_m, const LinkConfig& link);

// alpha * E[R]/R_max - (1 - alpha) * P_out, in [-1, 1].
double scalarized_objective(double expected_rate_bps, double outage_prob, double r_max_bps, double alpha);

// Evaluates the beam objectives for one (d_hat, sigma_eff) channel state.
// Construction precomputes the quadrature nodes over the beam-offset
// variable and the per-node Gaussian weights; evaluation then costs one
// pattern sum per node. All BS-side quantities use the estimated
// distance.
class BeamObjective
{
  public:
    BeamObjective(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg);

    struct Pair
    {
        double expected_rate_bps = 0.0;
        double outage_prob = 0.0;
    };

    // parameterized beam; beta is saturated to the power budget
    Pair evaluate(double v, double omega) const;
    Pair evaluate_taper(const std::vector<double>& taper, double beta) const;
    // arbitrary precoder expressed in the boresight frame (steering
    // phases toward phi_hat removed)
    Pair evaluate_precoder(const CVec& f0) const;

    // exact outage: probability mass of the offset set where the rate
    // falls below r_min, by 4096-point trapezoidal integration of the
    // indicator
    double outage_exact(double v, double omega) const;
    double outage_exact_precoder(const CVec& f0) const;

    double g_alpha(const Pair& p) const
    {
        return scalarized_objective(p.expected_rate_bps, p.outage_prob, r_max_bps_, cfg_.alpha);
    }
    ObjectiveValue value(const Pair& p) const
    {
        return {p.expected_rate_bps, p.outage_prob, g_alpha(p)};
    }

    double r_max_bps() const { return r_max_bps_; }
    double snr_per_unit_gain() const { return snr0_; }
    double sigma_eff_rad() const { return sigma_; }
    const ObjectiveConfig& config() const { return cfg_; }

  private:
    double rate_of_gain(double gain) const;
    double logistic_of_rate(double rate_bps) const;
    Pair integrate_taper(const double* taper, double beta, int n) const;
    Pair integrate_precoder(const CVec& f0) const;

    ObjectiveConfig cfg_;
    double d_hat_ = 0.0;
    double sigma_ = 0.0;
    double snr0_ = 0.0; // eta^2(d_hat) / sigma_n^2(d_hat)
    double r_max_bps_ = 0.0;
    // quadrature nodes over the beam-offset variable; weights fold in the
    // Gaussian density
    std::vector<double> eps_;
    std::vector<double> wg_;
    std::vector<double> cos_pi_eps_;
    std::vector<double> sin_pi_eps_;
};

// Free wrappers matching the one-shot call signatures.
double expected_rate(const BeamParams& params, double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg);
double outage_prob_smooth(const BeamParams& params, double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg);
double outage_prob_exact(const BeamParams& params, double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg);

} // namespace thztrack
