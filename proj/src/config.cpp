// SPDX-License-Identifier: Apache-2.0

#include "thztrack/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thztrack
{

std::vector<double> LutGridSpec::d_grid() const
{
    if (!(d_step_m > 0.0) || !(d_max_m >= d_min_m) || !(d_min_m > 0.0))
        throw std::invalid_argument("lut d grid specification is invalid");
    std::vector<double> g;
    int count = static_cast<int>(std::round((d_max_m - d_min_m) / d_step_m)) + 1;
    for (int i = 0; i < count; ++i)
        g.push_back(d_min_m + i * d_step_m);
    return g;
}

std::vector<double> LutGridSpec::sigma_grid_rad() const
{
    if (!(sigma_step_deg > 0.0) || !(sigma_max_deg >= sigma_min_deg) || sigma_min_deg < 0.0)
        throw std::invalid_argument("lut sigma grid specification is invalid");
    std::vector<double> g;
    int count = static_cast<int>(std::round((sigma_max_deg - sigma_min_deg) / sigma_step_deg)) + 1;
    for (int i = 0; i < count; ++i)
        g.push_back((sigma_min_deg + i * sigma_step_deg) * M_PI / 180.0);
    return g;
}

AppConfig default_config()
{
    AppConfig cfg;
    cfg.scenario.objective.link = LinkConfig{};
    return cfg;
}

namespace
{

struct RawEntry
{
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<RawEntry> tokenize(const std::string& text)
{
    std::vector<RawEntry> entries;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        if (t.front() == '[')
        {
            if (t.back() != ']')
                throw std::runtime_error("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        RawEntry e;
        e.section = section;
        e.key = trim(t.substr(0, eq));
        e.value = trim(t.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        entries.push_back(std::move(e));
    }
    return entries;
}

double parse_number(const RawEntry& e)
{
    try
    {
        std::size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception&)
    {
        throw std::runtime_error("config key '" + e.key + "': cannot parse number from '" + e.value + "'");
    }
}

long parse_integer(const RawEntry& e)
{
    try
    {
        std::size_t pos = 0;
        long v = std::stol(e.value, &pos);
        if (pos != e.value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception&)
    {
        throw std::runtime_error("config key '" + e.key + "': cannot parse integer from '" + e.value + "'");
    }
}

} // namespace

AppConfig parse_config_text(const std::string& text)
{
    AppConfig cfg = default_config();
    ScenarioConfig& sc = cfg.scenario;
    LinkConfig& link = sc.objective.link;

    bool tx_dbm_seen = false, tx_w_seen = false;
    bool n0_dbm_seen = false, n0_w_seen = false;

    for (const RawEntry& e : tokenize(text))
    {
        const std::string id = e.section.empty() ? e.key : e.section + "." + e.key;
        if (e.section == "link")
        {
            if (e.key == "carrier_frequency_hz") link.carrier_frequency_hz = parse_number(e);
            else if (e.key == "bandwidth_hz") link.bandwidth_hz = parse_number(e);
            else if (e.key == "tx_power_dbm") { link.tx_power_w = dbm_to_watts(parse_number(e)); tx_dbm_seen = true; }
            else if (e.key == "tx_power_w") { link.tx_power_w = parse_number(e); tx_w_seen = true; }
            else if (e.key == "noise_psd_dbm_per_hz") { link.noise_psd_w_per_hz = dbm_to_watts(parse_number(e)); n0_dbm_seen = true; }
            else if (e.key == "noise_psd_w_per_hz") { link.noise_psd_w_per_hz = parse_number(e); n0_w_seen = true; }
            else if (e.key == "n_tx") link.n_tx = static_cast<int>(parse_integer(e));
            else if (e.key == "n_rx") link.n_rx = static_cast<int>(parse_integer(e));
            else if (e.key == "slot_duration_s") link.slot_duration_s = parse_number(e);
            else if (e.key == "blocker_density_per_m2") link.blocker_density_per_m2 = parse_number(e);
            else if (e.key == "blocker_speed_mps") link.blocker_speed_mps = parse_number(e);
            else if (e.key == "height_bs_m") link.height_bs_m = parse_number(e);
            else if (e.key == "height_ue_m") link.height_ue_m = parse_number(e);
            else if (e.key == "height_blocker_m") link.height_blocker_m = parse_number(e);
            else if (e.key == "unblocking_rate_hz") link.unblocking_rate_hz = parse_number(e);
            else if (e.key == "absorption_line_peak_per_m") link.absorption_curve = AbsorptionCurve::builtin(parse_number(e));
            else if (e.key == "absorption_file") link.absorption_curve = AbsorptionCurve::from_file(e.value);
            else throw std::runtime_error("unknown config key '" + id + "'");
        }
        else if (e.section == "objective")
        {
            if (e.key == "alpha") sc.objective.alpha = parse_number(e);
            else if (e.key == "r_min_bps") sc.objective.r_min_bps = parse_number(e);
            else if (e.key == "theta") sc.objective.theta = parse_number(e);
            else if (e.key == "quadrature_nodes") sc.objective.quadrature_nodes = static_cast<int>(parse_integer(e));
            else throw std::runtime_error("unknown config key '" + id + "'");
        }
        else if (e.section == "trigger")
        {
            if (e.key == "r_q") sc.r_q = parse_number(e);
            else if (e.key == "mu") sc.mu = parse_number(e);
            else throw std::runtime_error("unknown config key '" + id + "'");
        }
        else if (e.section == "sim")
        {
            if (e.key == "horizon_slots") sc.horizon_slots = static_cast<int>(parse_integer(e));
            else if (e.key == "scheme") sc.scheme = scheme_from_name(e.value);
            else if (e.key == "period") sc.period = static_cast<int>(parse_integer(e));
            else if (e.key == "master_seed") sc.master_seed = static_cast<std::uint64_t>(parse_integer(e));
            else if (e.key == "step_std_m") sc.step_std_m = parse_number(e);
            else if (e.key == "handover_min_m") sc.handover_min_m = parse_number(e);
            else if (e.key == "handover_max_m") sc.handover_max_m = parse_number(e);
            else throw std::runtime_error("unknown config key '" + id + "'");
        }
        else if (e.section == "pso")
        {
            if (e.key == "swarm_size") cfg.pso.swarm_size = static_cast<int>(parse_integer(e));
            else if (e.key == "iterations") cfg.pso.iterations = static_cast<int>(parse_integer(e));
            else if (e.key == "inertia") cfg.pso.inertia = parse_number(e);
            else if (e.key == "cognitive") cfg.pso.cognitive = parse_number(e);
            else if (e.key == "social") cfg.pso.social = parse_number(e);
            else throw std::runtime_error("unknown config key '" + id + "'");
        }
        else if (e.section == "lut")
        {
            if (e.key == "d_min_m") cfg.lut_grid.d_min_m = parse_number(e);
            else if (e.key == "d_max_m") cfg.lut_grid.d_max_m = parse_number(e);
            else if (e.key == "d_step_m") cfg.lut_grid.d_step_m = parse_number(e);
            else if (e.key == "sigma_min_deg") cfg.lut_grid.sigma_min_deg = parse_number(e);
            else if (e.key == "sigma_max_deg") cfg.lut_grid.sigma_max_deg = parse_number(e);
            else if (e.key == "sigma_step_deg") cfg.lut_grid.sigma_step_deg = parse_number(e);
            else throw std::runtime_error("unknown config key '" + id + "'");
        }
        else
        {
            throw std::runtime_error("unknown config key '" + id + "'");
        }
    }

    if (tx_dbm_seen && tx_w_seen)
        throw std::runtime_error("config keys 'tx_power_dbm' and 'tx_power_w' are mutually exclusive");
    if (n0_dbm_seen && n0_w_seen)
        throw std::runtime_error("config keys 'noise_psd_dbm_per_hz' and 'noise_psd_w_per_hz' are mutually exclusive");

    try
    {
        cfg.scenario.validate();
        cfg.pso.validate();
        (void)cfg.lut_grid.d_grid();
        (void)cfg.lut_grid.sigma_grid_rad();
    }
    catch (const std::invalid_argument& err)
    {
        throw std::runtime_error(std::string("config validation failed: ") + err.what());
    }
    return cfg;
}

AppConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config file not found: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const AppConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> out;
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const ScenarioConfig& sc = cfg.scenario;
    const LinkConfig& l = sc.objective.link;
    out.emplace_back("link.carrier_frequency_hz", num(l.carrier_frequency_hz));
    out.emplace_back("link.bandwidth_hz", num(l.bandwidth_hz));
    out.emplace_back("link.tx_power_w", num(l.tx_power_w));
    out.emplace_back("link.noise_psd_w_per_hz", num(l.noise_psd_w_per_hz));
    out.emplace_back("link.n_tx", std::to_string(l.n_tx));
    out.emplace_back("link.n_rx", std::to_string(l.n_rx));
    out.emplace_back("link.slot_duration_s", num(l.slot_duration_s));
    out.emplace_back("link.blocker_density_per_m2", num(l.blocker_density_per_m2));
    out.emplace_back("link.blocker_speed_mps", num(l.blocker_speed_mps));
    out.emplace_back("link.height_bs_m", num(l.height_bs_m));
    out.emplace_back("link.height_ue_m", num(l.height_ue_m));
    out.emplace_back("link.height_blocker_m", num(l.height_blocker_m));
    out.emplace_back("link.unblocking_rate_hz", num(l.unblocking_rate_hz));
    out.emplace_back("link.absorption_k_at_carrier", num(absorption_coefficient(l, l.carrier_frequency_hz)));
    out.emplace_back("objective.alpha", num(sc.objective.alpha));
    out.emplace_back("objective.r_min_bps", num(sc.objective.r_min_bps));
    out.emplace_back("objective.theta", num(sc.objective.theta));
    out.emplace_back("objective.quadrature_nodes", std::to_string(sc.objective.quadrature_nodes));
    out.emplace_back("trigger.r_q", num(sc.r_q));
    out.emplace_back("trigger.mu", num(sc.mu));
    out.emplace_back("sim.horizon_slots", std::to_string(sc.horizon_slots));
    out.emplace_back("sim.scheme", scheme_name(sc.scheme));
    out.emplace_back("sim.period", std::to_string(sc.period));
    out.emplace_back("sim.master_seed", std::to_string(sc.master_seed));
    out.emplace_back("sim.step_std_m", num(sc.step_std_m));
    out.emplace_back("sim.handover_min_m", num(sc.handover_min_m));
    out.emplace_back("sim.handover_max_m", num(sc.handover_max_m));
    out.emplace_back("pso.swarm_size", std::to_string(cfg.pso.swarm_size));
    out.emplace_back("pso.iterations", std::to_string(cfg.pso.iterations));
    out.emplace_back("pso.inertia", num(cfg.pso.inertia));
    out.emplace_back("pso.cognitive", num(cfg.pso.cognitive));
    out.emplace_back("pso.social", num(cfg.pso.social));
    out.emplace_back("lut.d_min_m", num(cfg.lut_grid.d_min_m));
    out.emplace_back("lut.d_max_m", num(cfg.lut_grid.d_max_m));
    out.emplace_back("lut.d_step_m", num(cfg.lut_grid.d_step_m));
    out.emplace_back("lut.sigma_min_deg", num(cfg.lut_grid.sigma_min_deg));
    out.emplace_back("lut.sigma_max_deg", num(cfg.lut_grid.sigma_max_deg));
    out.emplace_back("lut.sigma_step_deg", num(cfg.lut_grid.sigma_step_deg));
    return out;
}

} // namespace thztrack
