// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thztrack/objectives.hpp"

namespace thztrack
{

struct PsoConfig
{
    int swarm_size = 48;
    int iterations = 120;
    double inertia = 0.72;
    double cognitive = 1.49;
    double social = 1.49;
    std::uint64_t seed = 1;

    void validate() const;
};

struct OptResult
{
    BeamParams params;
    ObjectiveValue value;
};

// Particle swarm over (v, omega) with v in [0, 1] and omega in
// [-pi n_tx, pi n_tx]; beta is eliminated through power saturation.
// Deterministic for a fixed seed; particle 0 starts at the conjugate
// beam so the result never falls below the narrow-beam baseline.
OptResult pso_optimize(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg, const PsoConfig& pso);

struct LutCell
{
    double v = 0.0;
    double omega = 0.0;
    double expected_rate_bps = 0.0;
    double outage_prob = 0.0;
    double g_alpha = 0.0;
};

struct LutQuery
{
    LutCell cell;
    std::size_t d_index = 0;
    std::size_t sigma_index = 0;
    bool clamped = false;
};

struct LookupTable
{
    std::vector<double> d_grid_m;        // ascending
    std::vector<double> sigma_grid_rad;  // ascending
    std::vector<LutCell> cells;          // row-major, d index major
    std::uint64_t scenario_fingerprint = 0;

    const LutCell& at(std::size_t di, std::size_t si) const
    {
        return cells[di * sigma_grid_rad.size() + si];
    }
};

// Hash of every physical and objective field; guards against using a
// table built for a different scenario.
std::uint64_t scenario_fingerprint(const ObjectiveConfig& cfg);

// One pso_optimize per grid cell; per-cell seeds are derived from
// (pso.seed, cell index) so the result is reproducible and independent of
// the worker count.
LookupTable build_lookup_table(const std::vector<double>& d_grid_m, const std::vector<double>& sigma_grid_rad,
                               const ObjectiveConfig& cfg, const PsoConfig& pso, int workers = 1);

// Nearest-node lookup with clamping to the grid range (no extrapolation).
LutQuery lut_query(const LookupTable& table, double d_hat_m, double sigma_eff_rad);

struct GeneralResult
{
    CVec precoder; // boresight frame
    ObjectiveValue value;
};

// Projected gradient ascent over the complex precoder ball, central
// finite differences on the smoothed objective, radial projection.
// First restart starts at the conjugate beam, the rest at random points
// on the power sphere; extra caller-supplied starts are run as well and
// the best result over all starts is returned.
GeneralResult gradient_ascent_general(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg,
                                      int restarts, std::uint64_t seed,
                                      const std::vector<CVec>& extra_starts = {});

// Scalar grid search of the chirp parameter maximizing the expected rate;
// ties resolve to the smallest zeta.
double chirp_parameter_search(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg,
                              double zeta_max = 8.0, int grid_points = 256);

struct ParetoPoint
{
    double alpha = 0.0;
    BeamParams params;
    ObjectiveValue parameterized;
    double parameterized_outage_exact = 0.0;
    ObjectiveValue general;
    double general_outage_exact = 0.0;
};

// One optimization per alpha per solver; the general solver is warm
// started from the parameterized optimum in addition to its own restarts.
std::vector<ParetoPoint> pareto_sweep(double d_hat_m, double sigma_eff_rad, std::vector<double> alphas,
                                      const ObjectiveConfig& cfg, const PsoConfig& pso, int general_restarts = 4);

// Binary persistence; load verifies the format version and leaves
// fingerprint checks to the consumer.
void save_lut(const LookupTable& table, const std::string& path);
LookupTable load_lut(const std::string& path);
void export_lut_csv(const LookupTable& table, const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& header = {});

} // namespace thztrack
