// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thztrack/experiments.hpp"

using namespace thztrack;

namespace
{

struct CommonArgs
{
    std::string config_path;
    std::string out_path = "out.csv";
    long seed = -1; // -1 keeps the config value
    int workers = 1;
    std::vector<std::string> lut_paths;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_lut)
{
    cmd->add_option("--config", a.config_path, "configuration file (defaults apply when omitted)");
    cmd->add_option("--out", a.out_path, "output path");
    cmd->add_option("--seed", a.seed, "master seed override");
    cmd->add_option("--workers", a.workers, "worker threads")->check(CLI::PositiveNumber);
    if (with_lut)
        cmd->add_option("--lut", a.lut_paths, "lookup-table file (repeatable)");
}

AppConfig load(const CommonArgs& a)
{
    AppConfig cfg = a.config_path.empty() ? default_config() : parse_config(a.config_path);
    if (a.seed >= 0)
        cfg.scenario.master_seed = static_cast<std::uint64_t>(a.seed);
    return cfg;
}

std::vector<double> default_alphas()
{
    std::vector<double> v;
    for (int i = 0; i <= 10; ++i)
        v.push_back(i / 10.0);
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"THz beam tracking simulator and beam optimization toolkit"};
    app.require_subcommand(1);

    CommonArgs lut_a;
    auto* lut_cmd = app.add_subcommand("lut-build", "precompute optimal beam parameters on a (d, sigma) grid");
    add_common(lut_cmd, lut_a, false);

    CommonArgs pat_a;
    double pat_d = 8.0, pat_sigma = 1.5;
    std::vector<double> pat_alphas = {0.0, 0.6, 1.0};
    auto* pat_cmd = app.add_subcommand("beam-pattern", "export optimized beam patterns (angle vs gain)");
    add_common(pat_cmd, pat_a, false);
    pat_cmd->add_option("--d", pat_d, "BS-UE distance in m");
    pat_cmd->add_option("--sigma-deg", pat_sigma, "effective AoD deviation in degrees");
    pat_cmd->add_option("--alphas", pat_alphas, "scalarization weights");

    CommonArgs par_a;
    double par_d = 8.0, par_sigma = 1.5;
    std::vector<double> par_alphas;
    int par_restarts = 4;
    auto* par_cmd = app.add_subcommand("pareto", "rate/outage tradeoff sweep over alpha, both solvers");
    add_common(par_cmd, par_a, false);
    par_cmd->add_option("--d", par_d, "BS-UE distance in m");
    par_cmd->add_option("--sigma-deg", par_sigma, "effective AoD deviation in degrees");
    par_cmd->add_option("--alphas", par_alphas, "scalarization weights (default 0,0.1,...,1)");
    par_cmd->add_option("--restarts", par_restarts, "gradient-ascent restarts");

    CommonArgs con_a;
    auto* con_cmd = app.add_subcommand("contour", "export lookup tables as plot-ready CSV");
    add_common(con_cmd, con_a, true);

    CommonArgs abs_a;
    double abs_fmin = 300e9, abs_fmax = 350e9, abs_fstep = 2.5e9, abs_sigma_p = 0.35;
    auto* abs_cmd = app.add_subcommand("absorption-sweep", "optimal beamwidth across the absorption line");
    add_common(abs_cmd, abs_a, false);
    abs_cmd->add_option("--f-min-hz", abs_fmin, "sweep start frequency");
    abs_cmd->add_option("--f-max-hz", abs_fmax, "sweep end frequency");
    abs_cmd->add_option("--f-step-hz", abs_fstep, "sweep step");
    abs_cmd->add_option("--sigma-p-m", abs_sigma_p, "position deviation in meters");

    CommonArgs bas_a;
    double bas_d = 8.0;
    std::vector<double> bas_sigmas = {1, 2, 3, 4, 5, 6, 7, 8};
    auto* bas_cmd = app.add_subcommand("baseline-compare", "proposed beams vs literature baselines");
    add_common(bas_cmd, bas_a, false);
    bas_cmd->add_option("--d", bas_d, "BS-UE distance in m");
    bas_cmd->add_option("--sigmas-deg", bas_sigmas, "AoD deviations in degrees");

    CommonArgs trc_a;
    auto* trc_cmd = app.add_subcommand("track-trace", "one seeded closed-loop run, per-slot records");
    add_common(trc_cmd, trc_a, true);

    CommonArgs cdf_a;
    int cdf_quantiles = 2001;
    auto* cdf_cmd = app.add_subcommand("track-cdf", "achieved-rate CDFs of proposed vs non-robust tracking");
    add_common(cdf_cmd, cdf_a, true);
    cdf_cmd->add_option("--quantiles", cdf_quantiles, "quantile resolution");

    CommonArgs oo_a;
    std::vector<double> oo_rq = {0.05, 0.0667, 0.1, 0.2};
    int oo_seeds = 5;
    auto* oo_cmd = app.add_subcommand("outage-overhead", "outage vs realized overhead across schemes");
    add_common(oo_cmd, oo_a, true);
    oo_cmd->add_option("--r-q", oo_rq, "overhead budgets");
    oo_cmd->add_option("--seeds", oo_seeds, "replicas per point")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (lut_cmd->parsed())
            run_lut_build(load(lut_a), lut_a.out_path, lut_a.workers);
        else if (pat_cmd->parsed())
            run_beam_pattern(load(pat_a), pat_d, pat_sigma, pat_alphas, pat_a.out_path);
        else if (par_cmd->parsed())
            run_pareto(load(par_a), par_d, par_sigma, par_alphas.empty() ? default_alphas() : par_alphas,
                       par_restarts, par_a.out_path);
        else if (con_cmd->parsed())
            run_contour(load(con_a), con_a.lut_paths, con_a.out_path);
        else if (abs_cmd->parsed())
            run_absorption_sweep(load(abs_a), abs_fmin, abs_fmax, abs_fstep, abs_sigma_p, abs_a.out_path);
        else if (bas_cmd->parsed())
            run_baseline_compare(load(bas_a), bas_d, bas_sigmas, bas_a.out_path);
        else if (trc_cmd->parsed())
            run_track_trace(load(trc_a), trc_a.lut_paths, trc_a.out_path);
        else if (cdf_cmd->parsed())
            run_track_cdf(load(cdf_a), cdf_a.lut_paths, cdf_quantiles, cdf_a.out_path);
        else if (oo_cmd->parsed())
            run_outage_overhead(load(oo_a), oo_a.lut_paths, oo_rq, oo_seeds, oo_a.out_path);
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
