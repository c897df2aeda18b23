// SPDX-License-Identifier: Apache-2.0

#include "thztrack/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thztrack
{

AbsorptionCurve::AbsorptionCurve(std::vector<std::pair<double, double>> points)
    : points_(std::move(points))
{
    if (points_.empty())
        throw std::invalid_argument("absorption_curve: empty table");
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        if (points_[i].second < 0.0)
            throw std::invalid_argument("absorption_curve: negative coefficient");
        if (i > 0 && points_[i].first <= points_[i - 1].first)
            throw std::invalid_argument("absorption_curve: frequencies must be strictly increasing");
    }
}

AbsorptionCurve AbsorptionCurve::builtin(double line_peak_per_m, double line_width_hz)
{
    std::vector<std::pair<double, double>> pts;
    const double f_lo = 100e9, f_hi = 450e9, step = 0.5e9;
    const double f_line = 325e9;
    pts.reserve(static_cast<std::size_t>((f_hi - f_lo) / step) + 1);
    for (double f = f_lo; f <= f_hi + 0.5 * step; f += step)
    {
        double base = 0.0012 * (f / 300e9) * (f / 300e9);
        double z = (f - f_line) / line_width_hz;
        double k = base + line_peak_per_m * std::exp(-0.5 * z * z);
        pts.emplace_back(f, k);
    }
    // anchor the reference coefficient exactly at the 300 GHz node
    for (auto& p : pts)
        if (std::abs(p.first - 300e9) < 0.25e9)
            p.second = 0.0012;
    return AbsorptionCurve(std::move(pts));
}

AbsorptionCurve AbsorptionCurve::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("absorption curve file not found: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("absorption curve file is empty: " + path);
    std::vector<std::pair<double, double>> pts;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ss(line);
        double f = 0.0, k = 0.0;
        if (!(ss >> f >> k))
            throw std::runtime_error("absorption curve: malformed line '" + line + "'");
        pts.emplace_back(f, k);
    }
    return AbsorptionCurve(std::move(pts));
}

double AbsorptionCurve::at(double f_hz) const
{
    if (f_hz < points_.front().first || f_hz > points_.back().first)
        throw std::out_of_range("absorption_coefficient: frequency outside table range");
    auto it = std::lower_bound(points_.begin(), points_.end(), f_hz,
                               [](const std::pair<double, double>& p, double f) { return p.first < f; });
    if (it->first == f_hz)
        return it->second;
    auto hi = it;
    auto lo = it - 1;
    double t = (f_hz - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

void LinkConfig::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(carrier_frequency_hz, "carrier_frequency_hz");
    positive(bandwidth_hz, "bandwidth_hz");
    positive(tx_power_w, "tx_power_w");
    positive(noise_psd_w_per_hz, "noise_psd_w_per_hz");
    if (n_tx < 1)
        throw std::invalid_argument("n_tx must be a positive integer");
    if (n_rx < 1)
        throw std::invalid_argument("n_rx must be a positive integer");
    positive(slot_duration_s, "slot_duration_s");
    if (blocker_density_per_m2 < 0.0)
        throw std::invalid_argument("blocker_density_per_m2 must be nonnegative");
    if (blocker_speed_mps < 0.0)
        throw std::invalid_argument("blocker_speed_mps must be nonnegative");
    positive(height_bs_m, "height_bs_m");
    positive(height_ue_m, "height_ue_m");
    positive(height_blocker_m, "height_blocker_m");
    if (!(height_bs_m > height_blocker_m && height_blocker_m > height_ue_m))
        throw std::invalid_argument("heights must satisfy height_bs_m > height_blocker_m > height_ue_m");
    positive(unblocking_rate_hz, "unblocking_rate_hz");
}

double absorption_coefficient(const LinkConfig& config, double f_hz)
{
    return config.absorption_curve.at(f_hz);
}

double path_gain(double d_m, double f_hz, double k_per_m)
{
    if (!(d_m > 0.0))
        throw std::domain_error("path_gain: distance must be positive");
    return kSpeedOfLight / (4.0 * M_PI * f_hz * d_m) * std::exp(-0.5 * k_per_m * d_m);
}

double noise_power(const LinkConfig& config, double d_m)
{
    if (!(d_m > 0.0))
        throw std::domain_error("noise_power: distance must be positive");
    double k = absorption_coefficient(config, config.carrier_frequency_hz);
    double fs = kSpeedOfLight / (4.0 * M_PI * config.carrier_frequency_hz * d_m);
    double thermal = config.noise_psd_w_per_hz * config.bandwidth_hz;
    double absorption = config.tx_power_w * fs * fs * (1.0 - std::exp(-k * d_m));
    return thermal + absorption;
}

CVec steering_vector(double phi_rad, int n_antennas)
{
    if (n_antennas < 1)
        throw std::invalid_argument("steering_vector: need at least one antenna");
    CVec a(static_cast<std::size_t>(n_antennas));
    double s = std::sin(phi_rad);
    double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    for (int n = 0; n < n_antennas; ++n)
        a[static_cast<std::size_t>(n)] = std::polar(scale, M_PI * n * s);
    return a;
}

double beam_gain(const CVec& precoder, double phi_rad)
{
    const int n = static_cast<int>(precoder.size());
    double s = std::sin(phi_rad);
    // sum f_n * exp(-j pi n sin(phi)) / sqrt(N), by phase recurrence
    std::complex<double> w = std::polar(1.0, -M_PI * s);
    std::complex<double> z(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k)
    {
        acc += precoder[static_cast<std::size_t>(k)] * z;
        z *= w;
    }
    return std::norm(acc) / static_cast<double>(n);
}

double achievable_rate(const LinkConfig& config, const LinkState& state, const CVec& precoder)
{
    if (static_cast<int>(precoder.size()) != config.n_tx)
        throw std::invalid_argument("achievable_rate: precoder length must equal n_tx");
    double p = 0.0;
    for (const auto& f : precoder)
        p += std::norm(f);
    if (p > config.tx_power_w * (1.0 + 1e-9))
        throw std::invalid_argument("achievable_rate: precoder violates the transmit power constraint");
    if (state.blocked)
        return 0.0;
    double d = state.distance_m();
    double k = absorption_coefficient(config, config.carrier_frequency_hz);
    double eta = path_gain(d, config.carrier_frequency_hz, k);
    double sigma2 = noise_power(config, d);
    double g = beam_gain(precoder, state.aod_rad());
    return config.bandwidth_hz * std::log2(1.0 + eta * eta / sigma2 * g);
}

double blockage_arrival_rate(const LinkConfig& config, double d_m)
{
    if (!(d_m > 0.0))
        throw std::domain_error("blockage_arrival_rate: distance must be positive");
    return 2.0 / M_PI * config.blocker_density_per_m2 * config.blocker_speed_mps *
           (config.height_blocker_m - config.height_ue_m) /
           (config.height_bs_m - config.height_ue_m) * d_m;
}

double blockage_probability(const LinkConfig& config, double d_m, bool blocked_prev)
{
    if (blocked_prev)
        return std::exp(-config.unblocking_rate_hz * config.slot_duration_s);
    return 1.0 - std::exp(-blockage_arrival_rate(config, d_m) * config.slot_duration_s);
}

bool blockage_step(bool blocked_prev, const LinkConfig& config, double d_m, Rng& rng)
{
    double u = rng.uniform();
    if (blocked_prev)
        return u >= 1.0 - std::exp(-config.unblocking_rate_hz * config.slot_duration_s);
    return u < 1.0 - std::exp(-blockage_arrival_rate(config, d_m) * config.slot_duration_s);
}

} // namespace thztrack
