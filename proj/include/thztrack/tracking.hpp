// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thztrack/event_trigger.hpp"
#include "thztrack/mobility.hpp"
#include "thztrack/objectives.hpp"
#include "thztrack/optimizer.hpp"

namespace thztrack
{

enum class Scheme
{
    proposed_event,
    proposed_periodic,
    nonrobust_event,
    nonrobust_periodic,
    chirp_event,
    chirp_periodic,
    partial_event,
    partial_periodic,
};

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
bool scheme_is_event(Scheme s);
bool scheme_needs_lut(Scheme s);

struct ScenarioConfig
{
    ObjectiveConfig objective; // includes the link
    double r_q = 0.05;
    double mu = 0.5;
    int horizon_slots = 100000;
    Scheme scheme = Scheme::proposed_event;
    int period = 20; // periodic schemes only
    std::uint64_t master_seed = 1;
    double handover_min_m = 3.0;
    double handover_max_m = 7.0;
    double step_std_m = 0.05;

    void validate() const;
};

struct SlotRecord
{
    int slot_index = 0;
    double true_distance_m = 0.0;
    double true_aod_rad = 0.0;
    double sigma_eff_rad = 0.0; // belief deviation the beam was built for
    bool blocked = false;
    bool pilot = false;
    bool forced_pilot = false;
    bool handover = false;
    double achieved_rate_bps = 0.0;
    bool outage = false;
    double z_after = 0.0;
};

struct RunSummary
{
    double outage_fraction = 0.0;
    double avg_overhead = 0.0;
    long handover_count = 0;
    double mean_rate_bps = 0.0;
    std::vector<double> rate_samples;
    long voluntary_pilots = 0;
    long forced_pilots = 0;
    long lut_clamped_queries = 0; // metadata, filled by run_tracking
};

struct TrackingResult
{
    std::vector<SlotRecord> records;
    RunSummary summary;
};

// Fresh serving-BS geometry: distance uniform in [min, max], angle
// uniform in (-pi/2, pi/2).
Vec2 draw_handover_position(double min_m, double max_m, Rng& rng);

// Exact per-slot statistics from a trace.
RunSummary aggregate_metrics(const std::vector<SlotRecord>& records);

// Closed-loop slot simulation: mobility and blockage on the truth,
// scheme-specific pilot decisions, handover on failed pilots or
// out-of-range detection, beam selection, fixed-rate transmission with
// ACK/NACK, and virtual-queue accounting. Deterministic for a fixed
// master seed. Proposed schemes require a lookup table whose fingerprint
// matches the scenario.
TrackingResult run_tracking(const ScenarioConfig& scenario, const LookupTable* lut);

} // namespace thztrack
