// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "thztrack/optimizer.hpp"

namespace thztrack
{

namespace
{
constexpr char kMagic[8] = {'T', 'H', 'Z', 'L', 'U', 'T', '0', '1'};

template <class T>
void write_pod(std::ofstream& out, const T& v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
void read_pod(std::ifstream& in, T& v)
{
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in)
        throw std::runtime_error("lut file truncated");
}
} // namespace

void save_lut(const LookupTable& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open lut file for writing: " + path);
    out.write(kMagic, sizeof kMagic);
    write_pod(out, table.scenario_fingerprint);
    std::uint64_t nd = table.d_grid_m.size(), ns = table.sigma_grid_rad.size();
    write_pod(out, nd);
    write_pod(out, ns);
    for (double d : table.d_grid_m)
        write_pod(out, d);
    for (double s : table.sigma_grid_rad)
        write_pod(out, s);
    for (const LutCell& c : table.cells)
    {
        write_pod(out, c.v);
        write_pod(out, c.omega);
        write_pod(out, c.expected_rate_bps);
        write_pod(out, c.outage_prob);
        write_pod(out, c.g_alpha);
    }
    if (!out)
        throw std::runtime_error("failed while writing lut file: " + path);
}

LookupTable load_lut(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open lut file: " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw std::runtime_error("lut file has wrong magic/format version: " + path);
    LookupTable t;
    read_pod(in, t.scenario_fingerprint);
    std::uint64_t nd = 0, ns = 0;
    read_pod(in, nd);
    read_pod(in, ns);
    if (nd == 0 || ns == 0 || nd > (1u << 20) || ns > (1u << 20))
        throw std::runtime_error("lut file has implausible grid sizes: " + path);
    t.d_grid_m.resize(nd);
    t.sigma_grid_rad.resize(ns);
    for (auto& d : t.d_grid_m)
        read_pod(in, d);
    for (auto& s : t.sigma_grid_rad)
        read_pod(in, s);
    t.cells.resize(nd * ns);
    for (auto& c : t.cells)
    {
        read_pod(in, c.v);
        read_pod(in, c.omega);
        read_pod(in, c.expected_rate_bps);
        read_pod(in, c.outage_prob);
        read_pod(in, c.g_alpha);
    }
    char extra;
    if (in.read(&extra, 1))
        throw std::runtime_error("lut file has trailing bytes: " + path);
    return t;
}

void export_lut_csv(const LookupTable& table, const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& header)
{
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw std::runtime_error("cannot open csv file for writing: " + path);
    for (const auto& kv : header)
        std::fprintf(f, "# %s = %s\n", kv.first.c_str(), kv.second.c_str());
    std::fprintf(f, "# fingerprint = %016llx\n",
                 static_cast<unsigned long long>(table.scenario_fingerprint));
    std::fprintf(f, "d_m,sigma_rad,v,omega,expected_rate_bps,outage_prob,g_alpha\n");
    for (std::size_t di = 0; di < table.d_grid_m.size(); ++di)
        for (std::size_t si = 0; si < table.sigma_grid_rad.size(); ++si)
        {
            const LutCell& c = table.at(di, si);
            std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", table.d_grid_m[di],
                         table.sigma_grid_rad[si], c.v, c.omega, c.expected_rate_bps, c.outage_prob,
                         c.g_alpha);
        }
    std::fclose(f);
}

} // namespace thztrack
