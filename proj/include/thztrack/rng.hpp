// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace thztrack
{

// Counter-based seed derivation (SplitMix64). Subordinate streams are
// obtained by folding stream indices into the master seed, so that the
// split master -> experiment -> replica -> cell is reproducible and
// independent of scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0)
{
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ (a + 0x517cc1b727220a95ULL));
    s = splitmix64(s ^ (b + 0x2545f4914f6cdd1dULL));
    s = splitmix64(s ^ (c + 0x9e3779b97f4a7c15ULL));
    return s;
}

// Thin wrapper around mt19937_64 with explicit uniform/gaussian mappings.
// The standard distributions are implementation-defined in their draw
// sequence, so the mappings are spelled out here to keep replays
// bit-identical.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    // standard normal via Box-Muller (both uniforms consumed every call)
    double gaussian()
    {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0)
        {
            u1 = uniform();
            u2 = uniform();
        }
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace thztrack
