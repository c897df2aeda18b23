// SPDX-License-Identifier: Apache-2.0

#include "thztrack/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thztrack
{

double sinc(double x)
{
    if (std::abs(x) < 1e-6)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

std::vector<double> sinc_taper(double v, double omega, int n_tx)
{
    std::vector<double> t(static_cast<std::size_t>(n_tx));
    for (int n = 0; n < n_tx; ++n)
        t[static_cast<std::size_t>(n)] = sinc((omega - M_PI * n) * v);
    return t;
}

double saturate_power(double v, double omega, double p_max_w, int n_tx)
{
    double s = 0.0;
    for (int n = 0; n < n_tx; ++n)
    {
        double t = sinc((omega - M_PI * n) * v);
        s += t * t;
    }
    return std::sqrt(p_max_w / s);
}

CVec sinc_precoder(const BeamParams& params, double phi_hat_rad, int n_tx)
{
    CVec f(static_cast<std::size_t>(n_tx));
    double sp = std::sin(phi_hat_rad);
    for (int n = 0; n < n_tx; ++n)
    {
        double t = params.beta * sinc((params.omega - M_PI * n) * params.v);
        f[static_cast<std::size_t>(n)] = std::polar(1.0, M_PI * n * sp) * t;
    }
    return f;
}

CVec conjugate_precoder(double phi_hat_rad, int n_tx, double p_max_w)
{
    CVec f(static_cast<std::size_t>(n_tx));
    double amp = std::sqrt(p_max_w / n_tx);
    double sp = std::sin(phi_hat_rad);
    for (int n = 0; n < n_tx; ++n)
        f[static_cast<std::size_t>(n)] = std::polar(amp, M_PI * n * sp);
    return f;
}

CVec chirp_precoder(double zeta, double phi_hat_rad, int n_tx, double p_max_w)
{
    CVec f(static_cast<std::size_t>(n_tx));
    double amp = std::sqrt(p_max_w / n_tx);
    double sp = std::sin(phi_hat_rad);
    for (int n = 0; n < n_tx; ++n)
    {
        double phase = M_PI * (n * sp + zeta * static_cast<double>(n) * n / n_tx);
        f[static_cast<std::size_t>(n)] = std::polar(amp, phase);
    }
    return f;
}

CVec partial_precoder(int n_active, double phi_hat_rad, int n_tx, double p_max_w)
{
    if (n_active < 1 || n_active > n_tx)
        throw std::invalid_argument("partial_precoder: active count out of range");
    CVec f(static_cast<std::size_t>(n_tx), {0.0, 0.0});
    double amp = std::sqrt(p_max_w / n_active);
    double sp = std::sin(phi_hat_rad);
    for (int n = 0; n < n_active; ++n)
        f[static_cast<std::size_t>(n)] = std::polar(amp, M_PI * n * sp);
    return f;
}

double subarray_hpbw(int n_active)
{
    if (n_active < 1)
        throw std::invalid_argument("subarray_hpbw: need at least one antenna");
    if (n_active == 1)
        return M_PI; // isotropic element, never drops 3 dB
    // Dirichlet pattern g(s) = sin^2(N pi s / 2) / sin^2(pi s / 2),
    // g(0) = N^2; bisect the first half-power crossing before the first
    // null at s = 2/N.
    auto g = [n_active](double s) {
        if (s == 0.0)
            return static_cast<double>(n_active) * n_active;
        double num = std::sin(n_active * M_PI * s / 2.0);
        double den = std::sin(M_PI * s / 2.0);
        return num * num / (den * den);
    };
    double half = 0.5 * n_active * n_active;
    double lo = 0.0, hi = 2.0 / n_active;
    if (hi >= 1.0)
    {
        // wide subarray lobe may exceed visible space
        if (g(1.0) > half)
            return M_PI;
        hi = 1.0;
    }
    for (int iter = 0; iter < 200; ++iter)
    {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > half)
            lo = mid;
        else
            hi = mid;
    }
    double s_half = 0.5 * (lo + hi);
    return 2.0 * std::asin(std::min(1.0, s_half));
}

int partial_activation_count(double sigma_eps_rad, int n_tx)
{
    if (!(sigma_eps_rad > 0.0))
        throw std::domain_error("partial_activation_count: sigma must be positive");
    // HPBW shrinks as the subarray grows, so scan from the full array down
    for (int na = n_tx; na >= 1; --na)
        if (subarray_hpbw(na) >= 2.0 * sigma_eps_rad)
            return na;
    return 1;
}

CVec partial_activation_precoder(double sigma_eps_rad, double phi_hat_rad, int n_tx, double p_max_w)
{
    int na = partial_activation_count(sigma_eps_rad, n_tx);
    return partial_precoder(na, phi_hat_rad, n_tx, p_max_w);
}

double measure_hpbw(const CVec& precoder, double phi_hat_rad)
{
    // chirped and flattened beams ripple inside the main lobe, so the
    // width is taken as the angular measure of the region within 3 dB of
    // the pattern peak rather than a two-sided edge march
    (void)phi_hat_rad;
    const int pts = 36001;
    const double step = M_PI / (pts - 1);
    std::vector<double> g(static_cast<std::size_t>(pts));
    double peak = 0.0;
    for (int i = 0; i < pts; ++i)
    {
        double phi = -M_PI / 2.0 + i * step;
        g[static_cast<std::size_t>(i)] = beam_gain(precoder, phi);
        peak = std::max(peak, g[static_cast<std::size_t>(i)]);
    }
    if (!(peak > 0.0))
        throw std::domain_error("measure_hpbw: zero pattern");
    long above = 0;
    for (double v : g)
        above += v >= 0.5 * peak ? 1 : 0;
    return static_cast<double>(above) * step;
}

std::vector<int> active_antennas(const CVec& precoder, double threshold_fraction, ActivationThreshold mode)
{
    double max_amp = 0.0;
    for (const auto& f : precoder)
        max_amp = std::max(max_amp, std::abs(f));
    if (!(max_amp > 0.0))
        throw std::domain_error("active_antennas: all-zero precoder");
    std::vector<int> idx;
    for (int n = 0; n < static_cast<int>(precoder.size()); ++n)
    {
        double amp = std::abs(precoder[static_cast<std::size_t>(n)]);
        bool on = (mode == ActivationThreshold::amplitude)
                      ? (amp >= threshold_fraction * max_amp)
                      : (amp * amp >= threshold_fraction * max_amp * max_amp);
        if (on)
            idx.push_back(n);
    }
    return idx;
}

} // namespace thztrack
