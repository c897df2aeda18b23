// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thztrack/rng.hpp"

namespace thztrack
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

using CVec = std::vector<std::complex<double>>;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Molecular absorption coefficient K(f), tabulated as ordered
// (frequency_hz, coefficient_per_m) pairs with linear interpolation.
class AbsorptionCurve
{
  public:
    AbsorptionCurve() = default;
    explicit AbsorptionCurve(std::vector<std::pair<double, double>> points);

    // Built-in table for 100-450 GHz: smooth frequency-squared floor
    // anchored at 0.0012 /m @ 300 GHz plus a water-vapor line bump at
    // 325 GHz (peak amplitude and width configurable).
    static AbsorptionCurve builtin(double line_peak_per_m = 0.06, double line_width_hz = 4e9);

    // Two-column text file: header line, then "frequency_hz K_per_m",
    // ascending frequency.
    static AbsorptionCurve from_file(const std::string& path);

    double at(double f_hz) const; // throws std::out_of_range outside table
    double min_frequency_hz() const { return points_.front().first; }
    double max_frequency_hz() const { return points_.back().first; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

  private:
    std::vector<std::pair<double, double>> points_;
};

// Static physical scenario. Defaults are the reference indoor setup
// (300 GHz carrier, 10 GHz bandwidth, 64x16 arrays, 30 dBm).
struct LinkConfig
{
    double carrier_frequency_hz = 300e9;
    double bandwidth_hz = 10e9;                          // W
    double tx_power_w = 1.0;                             // P_max (30 dBm)
    double noise_psd_w_per_hz = 3.981071705534986e-21;   // -174 dBm/Hz
    int n_tx = 64;
    int n_rx = 16;
    double slot_duration_s = 0.05;
    double blocker_density_per_m2 = 0.3;
    double blocker_speed_mps = 1.0;
    double height_bs_m = 3.5;
    double height_ue_m = 1.5;
    double height_blocker_m = 1.8;
    double unblocking_rate_hz = 3.0;
    AbsorptionCurve absorption_curve = AbsorptionCurve::builtin();

    void validate() const; // throws std::invalid_argument naming the field
};

// Dynamic ground truth of one BS-UE link, serving BS at the origin.
struct LinkState
{
    double x_m = 0.0;
    double y_m = 0.0;
    bool blocked = false;

    double distance_m() const { return std::hypot(x_m, y_m); }
    double aod_rad() const { return std::atan2(y_m, x_m); }
};

double absorption_coefficient(const LinkConfig& config, double f_hz);

// Amplitude channel gain c/(4 pi f d) * exp(-K d / 2).
double path_gain(double d_m, double f_hz, double k_per_m);

// Thermal noise over the bandwidth plus molecular re-radiation noise.
double noise_power(const LinkConfig& config, double d_m);

// Unit-norm ULA response, entry n = exp(j pi n sin(phi)) / sqrt(N).
CVec steering_vector(double phi_rad, int n_antennas);

// |a(phi)^H f|^2 for a unit-norm steering vector at phi.
double beam_gain(const CVec& precoder, double phi_rad);

// Rate supported by the channel for a given precoder; zero when blocked.
// The receive side applies ideal maximum-ratio combining, which
// contributes unit gain with normalized steering vectors.
double achievable_rate(const LinkConfig& config, const LinkState& state, const CVec& precoder);

// Distance-dependent arrival rate of dynamic blockers.
double blockage_arrival_rate(const LinkConfig& config, double d_m);

// Slot-conditional probability that the next slot is blocked given the
// previous slot's state (exponential on/off chain sampled once per slot).
double blockage_probability(const LinkConfig& config, double d_m, bool blocked_prev);

// Advance the on/off blockage chain by one slot using one uniform draw.
bool blockage_step(bool blocked_prev, const LinkConfig& config, double d_m, Rng& rng);

} // namespace thztrack
