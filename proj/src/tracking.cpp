// SPDX-License-Identifier: Apache-2.0

#include "thztrack/tracking.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace thztrack
{

std::string scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::proposed_event: return "proposed_event";
    case Scheme::proposed_periodic: return "proposed_periodic";
    case Scheme::nonrobust_event: return "nonrobust_event";
    case Scheme::nonrobust_periodic: return "nonrobust_periodic";
    case Scheme::chirp_event: return "chirp_event";
    case Scheme::chirp_periodic: return "chirp_periodic";
    case Scheme::partial_event: return "partial_event";
    case Scheme::partial_periodic: return "partial_periodic";
    }
    throw std::logic_error("scheme_name: unknown scheme");
}

Scheme scheme_from_name(const std::string& name)
{
    std::string n;
    for (char c : name)
        n.push_back(c == '-' ? '_' : c);
    for (Scheme s : {Scheme::proposed_event, Scheme::proposed_periodic, Scheme::nonrobust_event,
                     Scheme::nonrobust_periodic, Scheme::chirp_event, Scheme::chirp_periodic,
                     Scheme::partial_event, Scheme::partial_periodic})
        if (scheme_name(s) == n)
            return s;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

bool scheme_is_event(Scheme s)
{
    return s == Scheme::proposed_event || s == Scheme::nonrobust_event || s == Scheme::chirp_event ||
           s == Scheme::partial_event;
}

bool scheme_needs_lut(Scheme s)
{
    return s == Scheme::proposed_event || s == Scheme::proposed_periodic;
}

void ScenarioConfig::validate() const
{
    objective.validate();
    if (!(r_q > 0.0 && r_q <= 1.0))
        throw std::invalid_argument("r_q must lie in (0, 1]");
    if (!(mu > 0.0))
        throw std::invalid_argument("mu must be positive");
    if (horizon_slots < 1)
        throw std::invalid_argument("horizon_slots must be positive");
    if (period < 1)
        throw std::invalid_argument("period must be a positive integer");
    if (!(handover_min_m > 0.0) || !(handover_max_m >= handover_min_m))
        throw std::invalid_argument("handover distance interval is invalid");
    if (step_std_m < 0.0)
        throw std::invalid_argument("step_std_m must be nonnegative");
}

Vec2 draw_handover_position(double min_m, double max_m, Rng& rng)
{
    double d = rng.uniform(min_m, max_m);
    double phi = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
    return {d * std::cos(phi), d * std::sin(phi)};
}

RunSummary aggregate_metrics(const std::vector<SlotRecord>& records)
{
    if (records.empty())
        throw std::domain_error("aggregate_metrics: empty record list");
    RunSummary s;
    double rate_sum = 0.0;
    long outages = 0, pilots = 0;
    s.rate_samples.reserve(records.size());
    for (const SlotRecord& r : records)
    {
        rate_sum += r.achieved_rate_bps;
        s.rate_samples.push_back(r.achieved_rate_bps);
        outages += r.outage ? 1 : 0;
        pilots += r.pilot ? 1 : 0;
        s.handover_count += r.handover ? 1 : 0;
        s.forced_pilots += (r.pilot && r.forced_pilot) ? 1 : 0;
        s.voluntary_pilots += (r.pilot && !r.forced_pilot) ? 1 : 0;
    }
    const double n = static_cast<double>(records.size());
    s.outage_fraction = outages / n;
    s.avg_overhead = pilots / n;
    s.mean_rate_bps = rate_sum / n;
    return s;
}

namespace
{

// baseline beam choices are precalculated on the default table grid
struct BaselineMemo
{
    std::vector<double> d_grid;
    std::vector<double> s_grid;
    std::unordered_map<std::uint64_t, double> g_imp;  // scalarized objective per node
    std::unordered_map<std::uint64_t, double> zeta;   // chirp parameter per node

    BaselineMemo()
    {
        for (double d = 0.5; d <= 15.0 + 1e-9; d += 0.25)
            d_grid.push_back(d);
        for (int i = 0; i <= 40; ++i)
            s_grid.push_back(i * 0.25 * M_PI / 180.0);
    }

    static std::size_t nearest(const std::vector<double>& g, double x)
    {
        std::size_t best = 0;
        double bd = std::abs(g[0] - x);
        for (std::size_t i = 1; i < g.size(); ++i)
        {
            double di = std::abs(g[i] - x);
            if (di < bd)
            {
                bd = di;
                best = i;
            }
        }
        return best;
    }

    std::uint64_t key(double d, double sig) const
    {
        return nearest(d_grid, d) * 4096 + nearest(s_grid, sig);
    }
};

} // namespace

TrackingResult run_tracking(const ScenarioConfig& scenario, const LookupTable* lut)
{
    scenario.validate();
    const ObjectiveConfig& cfg = scenario.objective;
    const LinkConfig& link = cfg.link;

    if (scheme_needs_lut(scenario.scheme))
    {
        if (lut == nullptr)
            throw std::runtime_error("run_tracking: scheme '" + scheme_name(scenario.scheme) +
                                     "' needs a lookup table; build one with the lut-build command");
        if (lut->scenario_fingerprint != scenario_fingerprint(cfg))
            throw std::runtime_error("run_tracking: lookup table fingerprint does not match the scenario");
    }

    Rng rng(derive_seed(scenario.master_seed, 0x7C4A11));
    BaselineMemo memo;

    Vec2 pos = draw_handover_position(scenario.handover_min_m, scenario.handover_max_m, rng);
    bool blocked = false;
    BeliefState belief{pos, 0, scenario.step_std_m};
    TriggerState ts{0.0, scenario.r_q, scenario.mu};
    bool forced_pending = false;
    long clamped = 0;

    const bool is_event = scheme_is_event(scenario.scheme);
    const Scheme scheme = scenario.scheme;

    auto baseline_g_imp = [&](double d_hat, double sig) {
        std::uint64_t k = memo.key(d_hat, sig);
        auto it = memo.g_imp.find(k);
        if (it != memo.g_imp.end())
            return it->second;
        double dn = memo.d_grid[k / 4096];
        double sn = memo.s_grid[k % 4096];
        BeamObjective obj(dn, sn, cfg);
        double g = 0.0;
        if (scheme == Scheme::nonrobust_event)
        {
            g = obj.g_alpha(obj.evaluate(0.0, 0.0));
        }
        else if (scheme == Scheme::chirp_event)
        {
            double z = chirp_parameter_search(dn, sn, cfg);
            memo.zeta[k] = z;
            CVec f0(static_cast<std::size_t>(link.n_tx));
            double amp = std::sqrt(link.tx_power_w / link.n_tx);
            for (int n = 0; n < link.n_tx; ++n)
                f0[static_cast<std::size_t>(n)] =
                    std::polar(amp, M_PI * z * static_cast<double>(n) * n / link.n_tx);
            g = obj.g_alpha(obj.evaluate_precoder(f0));
        }
        else // partial_event
        {
            int na = sn > 0.0 ? partial_activation_count(sn, link.n_tx) : link.n_tx;
            CVec f0(static_cast<std::size_t>(link.n_tx), {0.0, 0.0});
            double amp = std::sqrt(link.tx_power_w / na);
            for (int n = 0; n < na; ++n)
                f0[static_cast<std::size_t>(n)] = {amp, 0.0};
            g = obj.g_alpha(obj.evaluate_precoder(f0));
        }
        memo.g_imp.emplace(k, g);
        return g;
    };

    auto chirp_zeta = [&](double d_hat, double sig) {
        std::uint64_t k = memo.key(d_hat, sig);
        auto it = memo.zeta.find(k);
        if (it != memo.zeta.end())
            return it->second;
        double z = chirp_parameter_search(memo.d_grid[k / 4096], memo.s_grid[k % 4096], cfg);
        memo.zeta.emplace(k, z);
        return z;
    };

    TrackingResult result;
    result.records.resize(static_cast<std::size_t>(scenario.horizon_slots));

    for (int k = 0; k < scenario.horizon_slots; ++k)
    {
        pos = random_walk_step(pos, scenario.step_std_m, rng);
        blocked = blockage_step(blocked, link, std::hypot(pos.x, pos.y), rng);

        // belief staleness including this slot's motion
        BeliefState pending = belief;
        pending.slots_since_pilot += 1;
        double d_hat = pending.est_distance_m();
        double sigma_now = pending.effective_aod_std_rad();

        bool pilot = false, forced = false, handover = false;
        if (forced_pending)
        {
            pilot = true;
            forced = true;
        }
        else if (is_event)
        {
            // last known blockage state is unblocked: handovers reset it and
            // successful pilots confirm it
            double p_b = blockage_probability(link, d_hat, false);
            double gp = g_perfect(d_hat, p_b, cfg.alpha, cfg);
            double gi;
            if (scheme == Scheme::proposed_event)
            {
                LutQuery q = lut_query(*lut, d_hat, sigma_now);
                clamped += q.clamped ? 1 : 0;
                gi = q.cell.g_alpha;
            }
            else
            {
                gi = baseline_g_imp(d_hat, sigma_now);
            }
            pilot = trigger_decision(ts, gp, gi);
        }
        else
        {
            pilot = (k % scenario.period) == 0;
        }

        if (pilot)
        {
            if (blocked)
            {
                // channel estimation fails under blockage; hand the user over
                handover = true;
                pos = draw_handover_position(scenario.handover_min_m, scenario.handover_max_m, rng);
                blocked = false;
                belief = BeliefState{pos, 0, scenario.step_std_m};
            }
            else
            {
                belief = BeliefState{pos, 0, scenario.step_std_m};
                if (r_max(belief.est_distance_m(), link) < cfg.r_min_bps)
                {
                    // user left the communication range of this BS
                    handover = true;
                    pos = draw_handover_position(scenario.handover_min_m, scenario.handover_max_m, rng);
                    belief = BeliefState{pos, 0, scenario.step_std_m};
                }
            }
        }
        else
        {
            belief = pending;
        }

        // beam construction from the current belief
        double phi_hat = belief.est_aod_rad();
        double sigma_used = belief.slots_since_pilot == 0 ? 0.0 : belief.effective_aod_std_rad();
        CVec f;
        switch (scheme)
        {
        case Scheme::proposed_event:
        case Scheme::proposed_periodic:
        {
            LutQuery q = lut_query(*lut, belief.est_distance_m(), sigma_used);
            clamped += q.clamped ? 1 : 0;
            BeamParams bp{q.cell.v, q.cell.omega,
                          saturate_power(q.cell.v, q.cell.omega, link.tx_power_w, link.n_tx)};
            f = sinc_precoder(bp, phi_hat, link.n_tx);
            break;
        }
        case Scheme::nonrobust_event:
        case Scheme::nonrobust_periodic:
            f = conjugate_precoder(phi_hat, link.n_tx, link.tx_power_w);
            break;
        case Scheme::chirp_event:
        case Scheme::chirp_periodic:
            f = chirp_precoder(chirp_zeta(belief.est_distance_m(), sigma_used), phi_hat, link.n_tx,
                               link.tx_power_w);
            break;
        case Scheme::partial_event:
        case Scheme::partial_periodic:
        {
            double sig_eps = belief.slots_since_pilot == 0 ? 0.0 : belief.aod_std_rad();
            int na = sig_eps > 0.0 ? partial_activation_count(sig_eps, link.n_tx) : link.n_tx;
            f = partial_precoder(na, phi_hat, link.n_tx, link.tx_power_w);
            break;
        }
        }

        LinkState truth{pos.x, pos.y, blocked};
        double rate = achievable_rate(link, truth, f);
        bool outage = rate < cfg.r_min_bps;
        forced_pending = outage; // NACK schedules a pilot for the next slot

        ts = queue_update(ts, pilot);

        SlotRecord& rec = result.records[static_cast<std::size_t>(k)];
        rec.slot_index = k;
        rec.true_distance_m = truth.distance_m();
        rec.true_aod_rad = truth.aod_rad();
        rec.sigma_eff_rad = sigma_used;
        rec.blocked = blocked;
        rec.pilot = pilot;
        rec.forced_pilot = forced;
        rec.handover = handover;
        rec.achieved_rate_bps = rate;
        rec.outage = outage;
        rec.z_after = ts.z;
    }

    result.summary = aggregate_metrics(result.records);
    result.summary.lut_clamped_queries = clamped;
    return result;
}

} // namespace thztrack
