// SPDX-License-Identifier: Apache-2.0

#include "thztrack/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thztrack/quadrature.hpp"

namespace thztrack
{

void ObjectiveConfig::validate() const
{
    link.validate();
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (!(r_min_bps > 0.0))
        throw std::invalid_argument("r_min_bps must be positive");
    if (!(theta > 0.0))
        throw std::invalid_argument("theta must be positive");
    if (quadrature_nodes < 1)
        throw std::invalid_argument("quadrature_nodes must be a positive integer");
}

double r_max(double d_hat_m, const LinkConfig& link)
{
    if (!(d_hat_m > 0.0))
        throw std::domain_error("r_max: distance must be positive");
    double k = absorption_coefficient(link, link.carrier_frequency_hz);
    double eta = path_gain(d_hat_m, link.carrier_frequency_hz, k);
    double sigma2 = noise_power(link, d_hat_m);
    return link.bandwidth_hz * std::log2(1.0 + link.tx_power_w * eta * eta / sigma2);
}

double scalarized_objective(double expected_rate_bps, double outage_prob, double r_max_bps, double alpha)
{
    if (!(r_max_bps > 0.0))
        throw std::domain_error("scalarized_objective: r_max must be positive");
    return alpha * expected_rate_bps / r_max_bps - (1.0 - alpha) * outage_prob;
}

BeamObjective::BeamObjective(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg)
    : cfg_(cfg), d_hat_(d_hat_m), sigma_(sigma_eff_rad)
{
    cfg_.validate();
    if (!(d_hat_m > 0.0))
        throw std::domain_error("BeamObjective: distance must be positive");
    if (sigma_eff_rad < 0.0)
        throw std::domain_error("BeamObjective: sigma must be nonnegative");

    const LinkConfig& link = cfg_.link;
    double k = absorption_coefficient(link, link.carrier_frequency_hz);
    double eta = path_gain(d_hat_, link.carrier_frequency_hz, k);
    double sigma2 = noise_power(link, d_hat_);
    snr0_ = eta * eta / sigma2;
    r_max_bps_ = link.bandwidth_hz * std::log2(1.0 + link.tx_power_w * snr0_);

    if (sigma_ > 0.0)
    {
        double half = std::min(M_PI / 2.0, 6.0 * sigma_);
        QuadratureRule rule = composite_gauss_legendre(half, link.n_tx, cfg_.quadrature_nodes);
        std::size_t m = rule.nodes.size();
        eps_ = std::move(rule.nodes);
        wg_.resize(m);
        cos_pi_eps_.resize(m);
        sin_pi_eps_.resize(m);
        double norm = 1.0 / (sigma_ * std::sqrt(2.0 * M_PI));
        for (std::size_t q = 0; q < m; ++q)
        {
            double z = eps_[q] / sigma_;
            wg_[q] = rule.weights[q] * norm * std::exp(-0.5 * z * z);
            cos_pi_eps_[q] = std::cos(M_PI * eps_[q]);
            sin_pi_eps_[q] = std::sin(M_PI * eps_[q]);
        }
    }
}

double BeamObjective::rate_of_gain(double gain) const
{
    return cfg_.link.bandwidth_hz * std::log2(1.0 + snr0_ * gain);
}

double BeamObjective::logistic_of_rate(double rate_bps) const
{
    // 1 / (1 + 2^{-theta r_min / W} (1 + snr)^theta), evaluated in log
    // space to avoid overflow
    double x = cfg_.theta * M_LN2 * (rate_bps - cfg_.r_min_bps) / cfg_.link.bandwidth_hz;
    if (x > 40.0)
        return 0.0;
    if (x < -40.0)
        return 1.0;
    return 1.0 / (1.0 + std::exp(x));
}

BeamObjective::Pair BeamObjective::integrate_taper(const double* taper, double beta, int n) const
{
    double scale = beta * beta / static_cast<double>(n);
    if (sigma_ == 0.0)
    {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += taper[i];
        double rate = rate_of_gain(scale * s * s);
        return {rate, logistic_of_rate(rate)};
    }
    double er = 0.0, po = 0.0;
    const std::size_t m = eps_.size();
    for (std::size_t q = 0; q < m; ++q)
    {
        double wr = cos_pi_eps_[q], wi = sin_pi_eps_[q];
        double zr = 1.0, zi = 0.0;
        double ar = 0.0, ai = 0.0;
        for (int i = 0; i < n; ++i)
        {
            ar += taper[i] * zr;
            ai += taper[i] * zi;
            double t = zr * wr - zi * wi;
            zi = zr * wi + zi * wr;
            zr = t;
        }
        double rate = rate_of_gain(scale * (ar * ar + ai * ai));
        er += wg_[q] * rate;
        po += wg_[q] * logistic_of_rate(rate);
    }
    return {er, po};
}

BeamObjective::Pair BeamObjective::integrate_precoder(const CVec& f0) const
{
    const int n = static_cast<int>(f0.size());
    double scale = 1.0 / static_cast<double>(n);
    if (sigma_ == 0.0)
    {
        std::complex<double> s{0.0, 0.0};
        for (const auto& f : f0)
            s += f;
        double rate = rate_of_gain(scale * std::norm(s));
        return {rate, logistic_of_rate(rate)};
    }
    double er = 0.0, po = 0.0;
    const std::size_t m = eps_.size();
    for (std::size_t q = 0; q < m; ++q)
    {
        // steering conjugate phases rotate by exp(-j pi eps) per antenna
        double wr = cos_pi_eps_[q], wi = -sin_pi_eps_[q];
        double zr = 1.0, zi = 0.0;
        double ar = 0.0, ai = 0.0;
        for (int i = 0; i < n; ++i)
        {
            double fr = f0[static_cast<std::size_t>(i)].real();
            double fi = f0[static_cast<std::size_t>(i)].imag();
            ar += fr * zr - fi * zi;
            ai += fr * zi + fi * zr;
            double t = zr * wr - zi * wi;
            zi = zr * wi + zi * wr;
            zr = t;
        }
        double rate = rate_of_gain(scale * (ar * ar + ai * ai));
        er += wg_[q] * rate;
        po += wg_[q] * logistic_of_rate(rate);
    }
    return {er, po};
}

BeamObjective::Pair BeamObjective::evaluate(double v, double omega) const
{
    const int n = cfg_.link.n_tx;
    std::vector<double> t = sinc_taper(v, omega, n);
    double beta = saturate_power(v, omega, cfg_.link.tx_power_w, n);
    return integrate_taper(t.data(), beta, n);
}

BeamObjective::Pair BeamObjective::evaluate_taper(const std::vector<double>& taper, double beta) const
{
    return integrate_taper(taper.data(), beta, static_cast<int>(taper.size()));
}

BeamObjective::Pair BeamObjective::evaluate_precoder(const CVec& f0) const
{
    return integrate_precoder(f0);
}

double BeamObjective::outage_exact(double v, double omega) const
{
    const int n = cfg_.link.n_tx;
    std::vector<double> t = sinc_taper(v, omega, n);
    double beta = saturate_power(v, omega, cfg_.link.tx_power_w, n);
    CVec f0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        f0[static_cast<std::size_t>(i)] = {beta * t[static_cast<std::size_t>(i)], 0.0};
    return outage_exact_precoder(f0);
}

double BeamObjective::outage_exact_precoder(const CVec& f0) const
{
    const int n = static_cast<int>(f0.size());
    double scale = 1.0 / static_cast<double>(n);
    auto rate_at = [&](double eps) {
        double wr = std::cos(M_PI * eps), wi = -std::sin(M_PI * eps);
        double zr = 1.0, zi = 0.0, ar = 0.0, ai = 0.0;
        for (int i = 0; i < n; ++i)
        {
            double fr = f0[static_cast<std::size_t>(i)].real();
            double fi = f0[static_cast<std::size_t>(i)].imag();
            ar += fr * zr - fi * zi;
            ai += fr * zi + fi * zr;
            double t = zr * wr - zi * wi;
            zi = zr * wi + zi * wr;
            zr = t;
        }
        return rate_of_gain(scale * (ar * ar + ai * ai));
    };
    if (sigma_ == 0.0)
        return rate_at(0.0) < cfg_.r_min_bps ? 1.0 : 0.0;

    const int points = 4096;
    double half = std::min(M_PI / 2.0, 6.0 * sigma_);
    double h = 2.0 * half / (points - 1);
    double norm = 1.0 / (sigma_ * std::sqrt(2.0 * M_PI));
    double acc = 0.0;
    for (int i = 0; i < points; ++i)
    {
        double eps = -half + i * h;
        double z = eps / sigma_;
        double val = (rate_at(eps) < cfg_.r_min_bps) ? norm * std::exp(-0.5 * z * z) : 0.0;
        double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        acc += w * val;
    }
    return std::min(1.0, acc * h);
}

double expected_rate(const BeamParams& params, double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg)
{
    BeamObjective obj(d_hat_m, sigma_eff_rad, cfg);
    std::vector<double> t = sinc_taper(params.v, params.omega, cfg.link.n_tx);
    return obj.evaluate_taper(t, params.beta).expected_rate_bps;
}

double outage_prob_smooth(const BeamParams& params, double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg)
{
    BeamObjective obj(d_hat_m, sigma_eff_rad, cfg);
    std::vector<double> t = sinc_taper(params.v, params.omega, cfg.link.n_tx);
    return obj.evaluate_taper(t, params.beta).outage_prob;
}

double outage_prob_exact(const BeamParams& params, double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg)
{
    BeamObjective obj(d_hat_m, sigma_eff_rad, cfg);
    const int n = cfg.link.n_tx;
    std::vector<double> t = sinc_taper(params.v, params.omega, n);
    CVec f0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        f0[static_cast<std::size_t>(i)] = {params.beta * t[static_cast<std::size_t>(i)], 0.0};
    return obj.outage_exact_precoder(f0);
}

} // namespace thztrack
