// SPDX-License-Identifier: Apache-2.0

#include "thztrack/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "thztrack/rng.hpp"

namespace thztrack
{

void PsoConfig::validate() const
{
    if (swarm_size < 2)
        throw std::invalid_argument("swarm_size must be at least 2");
    if (iterations < 1)
        throw std::invalid_argument("iterations must be positive");
    if (!(inertia > 0.0) || !(cognitive > 0.0) || !(social > 0.0))
        throw std::invalid_argument("pso coefficients must be positive");
}

namespace
{

double reflect_into(double x, double lo, double hi)
{
    // mirror until inside; falls back to clamping for extreme overshoot
    for (int i = 0; i < 8 && (x < lo || x > hi); ++i)
    {
        if (x < lo)
            x = 2.0 * lo - x;
        if (x > hi)
            x = 2.0 * hi - x;
    }
    return std::clamp(x, lo, hi);
}

} // namespace

OptResult pso_optimize(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg, const PsoConfig& pso)
{
    pso.validate();
    BeamObjective obj(d_hat_m, sigma_eff_rad, cfg);
    const double v_lo = 0.0, v_hi = 1.0;
    const double om_hi = M_PI * cfg.link.n_tx;
    const double om_lo = -om_hi;

    const int np = pso.swarm_size;
    std::vector<double> xv(np), xo(np), vv(np), vo(np), pbv(np), pbo(np), pbest(np);
    Rng rng(pso.seed);

    auto fitness = [&](double v, double omega) {
        return obj.g_alpha(obj.evaluate(v, omega));
    };

    double gbest = -1e300, gbv = 0.0, gbo = 0.0;
    for (int i = 0; i < np; ++i)
    {
        if (i == 0)
        {
            xv[0] = 0.0; // narrow-beam baseline always part of the swarm
            xo[0] = 0.0;
        }
        else
        {
            xv[i] = rng.uniform(v_lo, v_hi);
            xo[i] = rng.uniform(om_lo, om_hi);
        }
        vv[i] = rng.uniform(-0.25 * (v_hi - v_lo), 0.25 * (v_hi - v_lo));
        vo[i] = rng.uniform(-0.25 * (om_hi - om_lo), 0.25 * (om_hi - om_lo));
        pbv[i] = xv[i];
        pbo[i] = xo[i];
        pbest[i] = fitness(xv[i], xo[i]);
        if (pbest[i] > gbest)
        {
            gbest = pbest[i];
            gbv = xv[i];
            gbo = xo[i];
        }
    }

    int stagnant = 0;
    for (int it = 0; it < pso.iterations && stagnant < 30; ++it)
    {
        bool improved = false;
        for (int i = 0; i < np; ++i)
        {
            double r1 = rng.uniform(), r2 = rng.uniform();
            double r3 = rng.uniform(), r4 = rng.uniform();
            vv[i] = pso.inertia * vv[i] + pso.cognitive * r1 * (pbv[i] - xv[i]) + pso.social * r2 * (gbv - xv[i]);
            vo[i] = pso.inertia * vo[i] + pso.cognitive * r3 * (pbo[i] - xo[i]) + pso.social * r4 * (gbo - xo[i]);
            double nx = xv[i] + vv[i];
            double no = xo[i] + vo[i];
            if (nx < v_lo || nx > v_hi)
            {
                nx = reflect_into(nx, v_lo, v_hi);
                vv[i] = -vv[i];
            }
            if (no < om_lo || no > om_hi)
            {
                no = reflect_into(no, om_lo, om_hi);
                vo[i] = -vo[i];
            }
            xv[i] = nx;
            xo[i] = no;
            double f = fitness(nx, no);
            if (f > pbest[i])
            {
                pbest[i] = f;
                pbv[i] = nx;
                pbo[i] = no;
            }
            if (f > gbest + 1e-12 * (1.0 + std::abs(gbest)))
            {
                improved = true;
                gbest = f;
                gbv = nx;
                gbo = no;
            }
            else if (f > gbest)
            {
                gbest = f;
                gbv = nx;
                gbo = no;
            }
        }
        stagnant = improved ? 0 : stagnant + 1;
    }

    BeamParams best{gbv, gbo, saturate_power(gbv, gbo, cfg.link.tx_power_w, cfg.link.n_tx)};
    auto pair = obj.evaluate(best.v, best.omega);
    return {best, obj.value(pair)};
}

std::uint64_t scenario_fingerprint(const ObjectiveConfig& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a 64
    auto mix = [&h](const void* p, std::size_t n) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i)
        {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    auto mix_d = [&](double x) { mix(&x, sizeof x); };
    auto mix_i = [&](std::int64_t x) { mix(&x, sizeof x); };

    const LinkConfig& l = cfg.link;
    mix_d(l.carrier_frequency_hz);
    mix_d(l.bandwidth_hz);
    mix_d(l.tx_power_w);
    mix_d(l.noise_psd_w_per_hz);
    mix_i(l.n_tx);
    mix_i(l.n_rx);
    mix_d(l.slot_duration_s);
    mix_d(l.blocker_density_per_m2);
    mix_d(l.blocker_speed_mps);
    mix_d(l.height_bs_m);
    mix_d(l.height_ue_m);
    mix_d(l.height_blocker_m);
    mix_d(l.unblocking_rate_hz);
    for (const auto& p : l.absorption_curve.points())
    {
        mix_d(p.first);
        mix_d(p.second);
    }
    mix_d(cfg.alpha);
    mix_d(cfg.r_min_bps);
    mix_d(cfg.theta);
    mix_i(cfg.quadrature_nodes);
    return h;
}

LookupTable build_lookup_table(const std::vector<double>& d_grid_m, const std::vector<double>& sigma_grid_rad,
                               const ObjectiveConfig& cfg, const PsoConfig& pso, int workers)
{
    if (d_grid_m.empty() || sigma_grid_rad.empty())
        throw std::invalid_argument("build_lookup_table: grids must be nonempty");
    if (!std::is_sorted(d_grid_m.begin(), d_grid_m.end()) ||
        !std::is_sorted(sigma_grid_rad.begin(), sigma_grid_rad.end()))
        throw std::invalid_argument("build_lookup_table: grids must be ascending");

    LookupTable table;
    table.d_grid_m = d_grid_m;
    table.sigma_grid_rad = sigma_grid_rad;
    table.scenario_fingerprint = scenario_fingerprint(cfg);
    const std::size_t nd = d_grid_m.size(), ns = sigma_grid_rad.size();
    table.cells.resize(nd * ns);

    auto run_cell = [&](std::size_t idx) {
        std::size_t di = idx / ns, si = idx % ns;
        PsoConfig cell_pso = pso;
        cell_pso.seed = derive_seed(pso.seed, idx);
        OptResult r = pso_optimize(d_grid_m[di], sigma_grid_rad[si], cfg, cell_pso);
        table.cells[idx] = {r.params.v, r.params.omega, r.value.expected_rate_bps,
                            r.value.outage_prob, r.value.g_alpha};
    };

    const std::size_t total = nd * ns;
    if (workers <= 1)
    {
        for (std::size_t idx = 0; idx < total; ++idx)
            run_cell(idx);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int nw = std::min<int>(workers, static_cast<int>(total));
        pool.reserve(static_cast<std::size_t>(nw));
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
                    run_cell(idx);
            });
        for (auto& t : pool)
            t.join();
    }
    return table;
}

LutQuery lut_query(const LookupTable& table, double d_hat_m, double sigma_eff_rad)
{
    if (table.cells.empty())
        throw std::invalid_argument("lut_query: empty table");
    auto nearest = [](const std::vector<double>& grid, double x, bool& clamped) -> std::size_t {
        if (x <= grid.front())
        {
            clamped = clamped || x < grid.front();
            return 0;
        }
        if (x >= grid.back())
        {
            clamped = clamped || x > grid.back();
            return grid.size() - 1;
        }
        auto it = std::lower_bound(grid.begin(), grid.end(), x);
        std::size_t hi = static_cast<std::size_t>(it - grid.begin());
        std::size_t lo = hi - 1;
        return (x - grid[lo] <= grid[hi] - x) ? lo : hi;
    };
    LutQuery q;
    q.clamped = false;
    q.d_index = nearest(table.d_grid_m, d_hat_m, q.clamped);
    q.sigma_index = nearest(table.sigma_grid_rad, sigma_eff_rad, q.clamped);
    q.cell = table.at(q.d_index, q.sigma_index);
    return q;
}

namespace
{

struct AscentOutcome
{
    double g = -1e300;
    CVec f;
    bool ok = false;
};

AscentOutcome ascend(const BeamObjective& obj, const ObjectiveConfig& cfg, CVec f)
{
    const int n = static_cast<int>(f.size());
    const double p_max = cfg.link.tx_power_w;
    auto project = [&](CVec& x) {
        double p = 0.0;
        for (const auto& c : x)
            p += std::norm(c);
        if (p > p_max)
        {
            double s = std::sqrt(p_max / p);
            for (auto& c : x)
                c *= s;
        }
    };
    auto value = [&](const CVec& x) { return obj.g_alpha(obj.evaluate_precoder(x)); };

    project(f);
    double g = value(f);
    if (!std::isfinite(g))
        return {};

    const double h = 1e-4 * std::sqrt(p_max / n);
    double step = 0.05 * std::sqrt(p_max / n);
    CVec grad(f.size());
    for (int iter = 0; iter < 500; ++iter)
    {
        // central differences on every real/imaginary component
        for (int k = 0; k < n; ++k)
        {
            CVec probe = f;
            probe[static_cast<std::size_t>(k)] += h;
            double gp = value(probe);
            probe[static_cast<std::size_t>(k)] -= 2.0 * h;
            double gm = value(probe);
            double dre = (gp - gm) / (2.0 * h);
            probe = f;
            probe[static_cast<std::size_t>(k)] += std::complex<double>(0.0, h);
            gp = value(probe);
            probe[static_cast<std::size_t>(k)] -= std::complex<double>(0.0, 2.0 * h);
            gm = value(probe);
            double dim = (gp - gm) / (2.0 * h);
            grad[static_cast<std::size_t>(k)] = {dre, dim};
        }
        double gn = 0.0;
        for (const auto& c : grad)
            gn += std::norm(c);
        gn = std::sqrt(gn);
        if (!(gn > 0.0) || !std::isfinite(gn))
            break;

        // backtracking line search along the gradient
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls)
        {
            CVec cand = f;
            for (int k = 0; k < n; ++k)
                cand[static_cast<std::size_t>(k)] += (step / gn) * grad[static_cast<std::size_t>(k)];
            project(cand);
            double gc = value(cand);
            if (!std::isfinite(gc))
                return {}; // abort this restart
            if (gc > g)
            {
                f = std::move(cand);
                g = gc;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= 0.5;
            if (step < 1e-13 * std::sqrt(p_max / n))
                break;
        }
        if (!accepted)
            break;
    }
    return {g, std::move(f), true};
}

} // namespace

GeneralResult gradient_ascent_general(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg,
                                      int restarts, std::uint64_t seed, const std::vector<CVec>& extra_starts)
{
    if (restarts < 1)
        throw std::invalid_argument("gradient_ascent_general: restarts must be positive");
    BeamObjective obj(d_hat_m, sigma_eff_rad, cfg);
    const int n = cfg.link.n_tx;
    const double p_max = cfg.link.tx_power_w;
    Rng rng(seed);

    std::vector<CVec> starts;
    starts.reserve(static_cast<std::size_t>(restarts) + extra_starts.size());
    // boresight-frame conjugate beam = all-equal entries
    starts.emplace_back(CVec(static_cast<std::size_t>(n), {std::sqrt(p_max / n), 0.0}));
    for (int r = 1; r < restarts; ++r)
    {
        CVec f(static_cast<std::size_t>(n));
        double norm2 = 0.0;
        for (auto& c : f)
        {
            c = {rng.gaussian(), rng.gaussian()};
            norm2 += std::norm(c);
        }
        double s = std::sqrt(p_max / norm2);
        for (auto& c : f)
            c *= s;
        starts.push_back(std::move(f));
    }
    for (const auto& w : extra_starts)
        starts.push_back(w);

    AscentOutcome best;
    for (auto& s : starts)
    {
        AscentOutcome out = ascend(obj, cfg, std::move(s));
        if (out.ok && out.g > best.g)
            best = std::move(out);
    }
    if (!best.ok)
        throw std::runtime_error("gradient_ascent_general: every restart diverged");
    return {best.f, obj.value(obj.evaluate_precoder(best.f))};
}

double chirp_parameter_search(double d_hat_m, double sigma_eff_rad, const ObjectiveConfig& cfg,
                              double zeta_max, int grid_points)
{
    BeamObjective obj(d_hat_m, sigma_eff_rad, cfg);
    const int n = cfg.link.n_tx;
    double best_rate = -1.0, best_zeta = 0.0;
    for (int i = 0; i < grid_points; ++i)
    {
        double zeta = zeta_max * i / (grid_points - 1);
        CVec f0(static_cast<std::size_t>(n));
        double amp = std::sqrt(cfg.link.tx_power_w / n);
        for (int k = 0; k < n; ++k)
            f0[static_cast<std::size_t>(k)] =
                std::polar(amp, M_PI * zeta * static_cast<double>(k) * k / n);
        double rate = obj.evaluate_precoder(f0).expected_rate_bps;
        if (rate > best_rate)
        {
            best_rate = rate;
            best_zeta = zeta;
        }
    }
    return best_zeta;
}

std::vector<ParetoPoint> pareto_sweep(double d_hat_m, double sigma_eff_rad, std::vector<double> alphas,
                                      const ObjectiveConfig& cfg, const PsoConfig& pso, int general_restarts)
{
    if (alphas.empty())
        throw std::invalid_argument("pareto_sweep: alpha list must be nonempty");
    std::sort(alphas.begin(), alphas.end());
    std::vector<ParetoPoint> out;
    out.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
    {
        ObjectiveConfig acfg = cfg;
        acfg.alpha = alphas[i];
        BeamObjective obj(d_hat_m, sigma_eff_rad, acfg);

        PsoConfig apso = pso;
        apso.seed = derive_seed(pso.seed, 0xA1FA, i);
        OptResult p = pso_optimize(d_hat_m, sigma_eff_rad, acfg, apso);

        const int n = acfg.link.n_tx;
        std::vector<double> taper = sinc_taper(p.params.v, p.params.omega, n);
        CVec warm(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            warm[static_cast<std::size_t>(k)] = {p.params.beta * taper[static_cast<std::size_t>(k)], 0.0};

        GeneralResult g = gradient_ascent_general(d_hat_m, sigma_eff_rad, acfg, general_restarts,
                                                  derive_seed(pso.seed, 0x6E4A, i), {warm});

        ParetoPoint pt;
        pt.alpha = alphas[i];
        pt.params = p.params;
        pt.parameterized = p.value;
        pt.parameterized_outage_exact = obj.outage_exact_precoder(warm);
        pt.general = g.value;
        pt.general_outage_exact = obj.outage_exact_precoder(g.precoder);
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace thztrack
