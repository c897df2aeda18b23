// SPDX-License-Identifier: Apache-2.0

#include "thztrack/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace thztrack
{

namespace
{

// experiment identifiers for the master -> experiment -> replica split
enum : std::uint64_t
{
    kExpLut = 1,
    kExpPattern = 2,
    kExpPareto = 3,
    kExpAbsorption = 5,
    kExpBaseline = 6,
    kExpTrace = 7,
    kExpCdf = 8,
    kExpOutage = 9,
};

class Csv
{
  public:
    Csv(const std::string& path, const AppConfig& cfg)
    {
        f_ = std::fopen(path.c_str(), "w");
        if (!f_)
            throw std::runtime_error("cannot open output file: " + path);
        for (const auto& kv : resolved_entries(cfg))
            std::fprintf(f_, "# %s = %s\n", kv.first.c_str(), kv.second.c_str());
    }
    ~Csv()
    {
        if (f_)
            std::fclose(f_);
    }
    Csv(const Csv&) = delete;
    Csv& operator=(const Csv&) = delete;

    void comment(const std::string& key, const std::string& value)
    {
        std::fprintf(f_, "# %s = %s\n", key.c_str(), value.c_str());
    }
    void raw(const std::string& line) { std::fprintf(f_, "%s\n", line.c_str()); }
    std::FILE* file() { return f_; }

  private:
    std::FILE* f_ = nullptr;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CVec desteered(const BeamParams& p, int n_tx)
{
    std::vector<double> t = sinc_taper(p.v, p.omega, n_tx);
    CVec f0(static_cast<std::size_t>(n_tx));
    for (int i = 0; i < n_tx; ++i)
        f0[static_cast<std::size_t>(i)] = {p.beta * t[static_cast<std::size_t>(i)], 0.0};
    return f0;
}

} // namespace

LookupTable load_matching_lut(const AppConfig& cfg, double alpha, const std::vector<std::string>& lut_paths)
{
    ObjectiveConfig want = cfg.scenario.objective;
    want.alpha = alpha;
    std::uint64_t fp = scenario_fingerprint(want);
    for (const std::string& path : lut_paths)
    {
        LookupTable t = load_lut(path);
        if (t.scenario_fingerprint == fp)
            return t;
    }
    char a[32];
    std::snprintf(a, sizeof a, "%g", alpha);
    throw std::runtime_error(std::string("no supplied lookup table matches the scenario with alpha = ") + a +
                             "; build one with: thztrack lut-build --config <cfg> --out <file>");
}

void run_lut_build(const AppConfig& cfg, const std::string& out_path, int workers)
{
    PsoConfig pso = cfg.pso;
    pso.seed = derive_seed(cfg.scenario.master_seed, kExpLut);
    LookupTable t = build_lookup_table(cfg.lut_grid.d_grid(), cfg.lut_grid.sigma_grid_rad(),
                                       cfg.scenario.objective, pso, workers);
    save_lut(t, out_path);
    std::printf("wrote %zu x %zu lookup table to %s (fingerprint %016llx)\n", t.d_grid_m.size(),
                t.sigma_grid_rad.size(), out_path.c_str(),
                static_cast<unsigned long long>(t.scenario_fingerprint));
}

void run_beam_pattern(const AppConfig& cfg, double d_m, double sigma_deg, const std::vector<double>& alphas,
                      const std::string& out_path)
{
    const ObjectiveConfig& base = cfg.scenario.objective;
    const int n_tx = base.link.n_tx;
    double sigma = sigma_deg * M_PI / 180.0;

    struct Entry
    {
        std::string label;
        CVec f;
    };
    std::vector<Entry> beams;
    for (std::size_t i = 0; i < alphas.size(); ++i)
    {
        ObjectiveConfig acfg = base;
        acfg.alpha = alphas[i];
        PsoConfig pso = cfg.pso;
        pso.seed = derive_seed(cfg.scenario.master_seed, kExpPattern, i);
        OptResult r = pso_optimize(d_m, sigma, acfg, pso);
        char label[64];
        std::snprintf(label, sizeof label, "proposed_alpha_%g", alphas[i]);
        beams.push_back({label, sinc_precoder(r.params, 0.0, n_tx)});
    }
    beams.push_back({"nonrobust", conjugate_precoder(0.0, n_tx, base.link.tx_power_w)});

    Csv csv(out_path, cfg);
    csv.comment("experiment", "beam_pattern");
    csv.comment("d_m", fmt(d_m));
    csv.comment("sigma_deg", fmt(sigma_deg));
    csv.raw("beam,angle_deg,gain_db");
    for (const Entry& b : beams)
        for (double deg = -90.0; deg <= 90.0 + 1e-9; deg += 0.05)
        {
            double g = beam_gain(b.f, deg * M_PI / 180.0);
            double db = 10.0 * std::log10(std::max(g, 1e-30));
            std::fprintf(csv.file(), "%s,%.6g,%.10g\n", b.label.c_str(), deg, db);
        }
    std::printf("wrote beam patterns to %s\n", out_path.c_str());
}

void run_pareto(const AppConfig& cfg, double d_m, double sigma_deg, const std::vector<double>& alphas,
                int general_restarts, const std::string& out_path)
{
    double sigma = sigma_deg * M_PI / 180.0;
    PsoConfig pso = cfg.pso;
    pso.seed = derive_seed(cfg.scenario.master_seed, kExpPareto);
    std::vector<ParetoPoint> pts =
        pareto_sweep(d_m, sigma, alphas, cfg.scenario.objective, pso, general_restarts);

    Csv csv(out_path, cfg);
    csv.comment("experiment", "pareto");
    csv.comment("d_m", fmt(d_m));
    csv.comment("sigma_deg", fmt(sigma_deg));
    csv.raw("alpha,solver,v,omega,expected_rate_bps,outage_prob,outage_prob_exact,g_alpha");
    for (const ParetoPoint& p : pts)
    {
        std::fprintf(csv.file(), "%.17g,parameterized,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.alpha,
                     p.params.v, p.params.omega, p.parameterized.expected_rate_bps,
                     p.parameterized.outage_prob, p.parameterized_outage_exact, p.parameterized.g_alpha);
        std::fprintf(csv.file(), "%.17g,general,,,%.17g,%.17g,%.17g,%.17g\n", p.alpha,
                     p.general.expected_rate_bps, p.general.outage_prob, p.general_outage_exact,
                     p.general.g_alpha);
    }
    std::printf("wrote pareto sweep (%zu alphas) to %s\n", alphas.size(), out_path.c_str());
}

void run_contour(const AppConfig& cfg, const std::vector<std::string>& lut_paths, const std::string& out_path)
{
    if (lut_paths.empty())
        throw std::runtime_error("contour requires at least one --lut file; "
                                 "build one with: thztrack lut-build --config <cfg> --out <file>");
    for (std::size_t i = 0; i < lut_paths.size(); ++i)
    {
        LookupTable t = load_lut(lut_paths[i]);
        std::string path = out_path;
        if (lut_paths.size() > 1)
        {
            std::string suffix = "_" + std::to_string(i);
            std::size_t dot = path.rfind('.');
            if (dot == std::string::npos)
                path += suffix;
            else
                path.insert(dot, suffix);
        }
        export_lut_csv(t, path, resolved_entries(cfg));
        std::printf("wrote lut export to %s\n", path.c_str());
    }
}

void run_absorption_sweep(const AppConfig& cfg, double f_min_hz, double f_max_hz, double f_step_hz,
                          double sigma_p_m, const std::string& out_path)
{
    Csv csv(out_path, cfg);
    csv.comment("experiment", "absorption_sweep");
    csv.comment("sigma_p_m", fmt(sigma_p_m));
    csv.raw("frequency_hz,d_m,alpha,k_per_m,v,omega,expected_rate_bps,outage_prob,outage_prob_exact,r_max_bps");

    std::size_t idx = 0;
    for (double f = f_min_hz; f <= f_max_hz + 0.5 * f_step_hz; f += f_step_hz)
        for (double d : {5.0, 10.0})
            for (double alpha : {0.0, 1.0})
            {
                ObjectiveConfig acfg = cfg.scenario.objective;
                acfg.link.carrier_frequency_hz = f;
                acfg.alpha = alpha;
                double sigma = sigma_p_m / d;
                PsoConfig pso = cfg.pso;
                pso.seed = derive_seed(cfg.scenario.master_seed, kExpAbsorption, idx++);
                OptResult r = pso_optimize(d, sigma, acfg, pso);
                BeamObjective obj(d, sigma, acfg);
                double pex = obj.outage_exact(r.params.v, r.params.omega);
                std::fprintf(csv.file(), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                             f, d, alpha, absorption_coefficient(acfg.link, f), r.params.v,
                             r.params.omega, r.value.expected_rate_bps, r.value.outage_prob, pex,
                             obj.r_max_bps());
            }
    std::printf("wrote absorption sweep to %s\n", out_path.c_str());
}

void run_baseline_compare(const AppConfig& cfg, double d_m, const std::vector<double>& sigma_degs,
                          const std::string& out_path)
{
    const ObjectiveConfig& base = cfg.scenario.objective;
    const int n_tx = base.link.n_tx;
    const double p_max = base.link.tx_power_w;

    Csv csv(out_path, cfg);
    csv.comment("experiment", "baseline_compare");
    csv.comment("d_m", fmt(d_m));
    csv.raw("sigma_deg,scheme,v,omega,zeta,n_active,expected_rate_bps,outage_prob,outage_prob_exact");

    std::size_t idx = 0;
    for (double sd : sigma_degs)
    {
        double sigma = sd * M_PI / 180.0;
        BeamObjective obj(d_m, sigma, base);

        auto emit = [&](const char* scheme, double v, double omega, double zeta, int n_active,
                        const BeamObjective::Pair& p, double pex) {
            std::fprintf(csv.file(), "%.17g,%s,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g\n", sd, scheme, v,
                         omega, zeta, n_active, p.expected_rate_bps, p.outage_prob, pex);
        };

        for (double alpha : {1.0, 0.0})
        {
            ObjectiveConfig acfg = base;
            acfg.alpha = alpha;
            PsoConfig pso = cfg.pso;
            pso.seed = derive_seed(cfg.scenario.master_seed, kExpBaseline, idx++);
            OptResult r = pso_optimize(d_m, sigma, acfg, pso);
            CVec f0 = desteered(r.params, n_tx);
            auto p = obj.evaluate_precoder(f0);
            emit(alpha == 1.0 ? "proposed_alpha1" : "proposed_alpha0", r.params.v, r.params.omega, 0.0,
                 n_tx, p, obj.outage_exact_precoder(f0));
        }

        CVec fn = conjugate_precoder(0.0, n_tx, p_max);
        emit("nonrobust", 0.0, 0.0, 0.0, n_tx, obj.evaluate_precoder(fn), obj.outage_exact_precoder(fn));

        double zeta = chirp_parameter_search(d_m, sigma, base);
        CVec fc = chirp_precoder(zeta, 0.0, n_tx, p_max);
        emit("chirp", 0.0, 0.0, zeta, n_tx, obj.evaluate_precoder(fc), obj.outage_exact_precoder(fc));

        int na = sigma > 0.0 ? partial_activation_count(sigma, n_tx) : n_tx;
        CVec fp = partial_precoder(na, 0.0, n_tx, p_max);
        emit("partial", 0.0, 0.0, 0.0, na, obj.evaluate_precoder(fp), obj.outage_exact_precoder(fp));
    }
    std::printf("wrote baseline comparison to %s\n", out_path.c_str());
}

void run_track_trace(const AppConfig& cfg, const std::vector<std::string>& lut_paths,
                     const std::string& out_path)
{
    ScenarioConfig sc = cfg.scenario;
    LookupTable lut;
    const LookupTable* lp = nullptr;
    if (scheme_needs_lut(sc.scheme))
    {
        lut = load_matching_lut(cfg, sc.objective.alpha, lut_paths);
        lp = &lut;
    }
    sc.master_seed = derive_seed(cfg.scenario.master_seed, kExpTrace);
    TrackingResult r = run_tracking(sc, lp);

    Csv csv(out_path, cfg);
    csv.comment("experiment", "tracking_trace");
    csv.comment("outage_fraction", fmt(r.summary.outage_fraction));
    csv.comment("avg_overhead", fmt(r.summary.avg_overhead));
    csv.comment("handover_count", std::to_string(r.summary.handover_count));
    csv.comment("lut_clamped_queries", std::to_string(r.summary.lut_clamped_queries));
    csv.raw("slot,true_distance_m,true_aod_rad,sigma_eff_rad,blocked,pilot,forced_pilot,handover,"
            "achieved_rate_bps,outage,z_after");
    for (const SlotRecord& rec : r.records)
        std::fprintf(csv.file(), "%d,%.10g,%.10g,%.10g,%d,%d,%d,%d,%.10g,%d,%.10g\n", rec.slot_index,
                     rec.true_distance_m, rec.true_aod_rad, rec.sigma_eff_rad, rec.blocked ? 1 : 0,
                     rec.pilot ? 1 : 0, rec.forced_pilot ? 1 : 0, rec.handover ? 1 : 0,
                     rec.achieved_rate_bps, rec.outage ? 1 : 0, rec.z_after);
    std::printf("wrote tracking trace (%zu slots) to %s\n", r.records.size(), out_path.c_str());
}

void run_track_cdf(const AppConfig& cfg, const std::vector<std::string>& lut_paths, int quantiles,
                   const std::string& out_path)
{
    Csv csv(out_path, cfg);
    csv.comment("experiment", "tracking_cdf");
    csv.raw("scheme,quantile,rate_bps");

    auto emit_run = [&](const std::string& label, const RunSummary& s) {
        std::vector<double> rates = s.rate_samples;
        std::sort(rates.begin(), rates.end());
        long below = 0;
        for (double r : rates)
            below += (r < cfg.scenario.objective.r_min_bps) ? 1 : 0;
        csv.comment(label + ".below_target_fraction", fmt(static_cast<double>(below) / rates.size()));
        csv.comment(label + ".avg_overhead", fmt(s.avg_overhead));
        for (int q = 0; q < quantiles; ++q)
        {
            double u = static_cast<double>(q) / (quantiles - 1);
            std::size_t i = static_cast<std::size_t>(u * (rates.size() - 1));
            std::fprintf(csv.file(), "%s,%.8g,%.10g\n", label.c_str(), u, rates[i]);
        }
    };

    std::size_t rep = 0;
    for (double alpha : {0.0, 1.0})
    {
        AppConfig acfg = cfg;
        acfg.scenario.objective.alpha = alpha;
        acfg.scenario.scheme = Scheme::proposed_event;
        LookupTable lut = load_matching_lut(acfg, alpha, lut_paths);
        acfg.scenario.master_seed = derive_seed(cfg.scenario.master_seed, kExpCdf, rep++);
        TrackingResult r = run_tracking(acfg.scenario, &lut);
        char label[64];
        std::snprintf(label, sizeof label, "proposed_event_alpha_%g", alpha);
        emit_run(label, r.summary);
    }
    {
        ScenarioConfig sc = cfg.scenario;
        sc.scheme = Scheme::nonrobust_periodic;
        sc.master_seed = derive_seed(cfg.scenario.master_seed, kExpCdf, rep++);
        TrackingResult r = run_tracking(sc, nullptr);
        emit_run("nonrobust_periodic", r.summary);
    }
    std::printf("wrote rate cdf to %s\n", out_path.c_str());
}

void run_outage_overhead(const AppConfig& cfg, const std::vector<std::string>& lut_paths,
                         const std::vector<double>& r_q_values, int seeds, const std::string& out_path)
{
    LookupTable lut = load_matching_lut(cfg, cfg.scenario.objective.alpha, lut_paths);

    Csv csv(out_path, cfg);
    csv.comment("experiment", "outage_vs_overhead");
    csv.comment("note", "r_q value 0.0667 substituted for the inconsistent 0.667 in the reference grid");
    csv.raw("scheme,r_q,period,seed,avg_overhead,outage_fraction,handover_count,mean_rate_bps");

    const Scheme schemes[] = {Scheme::proposed_event, Scheme::nonrobust_event, Scheme::proposed_periodic,
                              Scheme::nonrobust_periodic};
    for (std::size_t si = 0; si < 4; ++si)
        for (std::size_t qi = 0; qi < r_q_values.size(); ++qi)
            for (int rep = 0; rep < seeds; ++rep)
            {
                ScenarioConfig sc = cfg.scenario;
                sc.scheme = schemes[si];
                sc.r_q = r_q_values[qi];
                sc.period = std::max(1, static_cast<int>(std::lround(1.0 / r_q_values[qi])));
                sc.master_seed = derive_seed(cfg.scenario.master_seed, kExpOutage,
                                             si * 1000 + qi, static_cast<std::uint64_t>(rep));
                const LookupTable* lp = scheme_needs_lut(sc.scheme) ? &lut : nullptr;
                TrackingResult r = run_tracking(sc, lp);
                std::fprintf(csv.file(), "%s,%.8g,%d,%d,%.10g,%.10g,%ld,%.10g\n",
                             scheme_name(sc.scheme).c_str(), sc.r_q, sc.period, rep,
                             r.summary.avg_overhead, r.summary.outage_fraction,
                             r.summary.handover_count, r.summary.mean_rate_bps);
            }
    std::printf("wrote outage-overhead grid to %s\n", out_path.c_str());
}

} // namespace thztrack
