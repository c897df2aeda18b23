// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "thztrack/config.hpp"

namespace thztrack
{

// Experiment drivers behind the CLI subcommands. Every driver writes one
// or more CSV files whose '#' header embeds the fully resolved
// configuration and master seed, so reruns are reproducible byte for
// byte.

void run_lut_build(const AppConfig& cfg, const std::string& out_path, int workers);

void run_beam_pattern(const AppConfig& cfg, double d_m, double sigma_deg,
                      const std::vector<double>& alphas, const std::string& out_path);

void run_pareto(const AppConfig& cfg, double d_m, double sigma_deg, const std::vector<double>& alphas,
                int general_restarts, const std::string& out_path);

void run_contour(const AppConfig& cfg, const std::vector<std::string>& lut_paths,
                 const std::string& out_path);

void run_absorption_sweep(const AppConfig& cfg, double f_min_hz, double f_max_hz, double f_step_hz,
                          double sigma_p_m, const std::string& out_path);

void run_baseline_compare(const AppConfig& cfg, double d_m, const std::vector<double>& sigma_degs,
                          const std::string& out_path);

void run_track_trace(const AppConfig& cfg, const std::vector<std::string>& lut_paths,
                     const std::string& out_path);

void run_track_cdf(const AppConfig& cfg, const std::vector<std::string>& lut_paths, int quantiles,
                   const std::string& out_path);

void run_outage_overhead(const AppConfig& cfg, const std::vector<std::string>& lut_paths,
                         const std::vector<double>& r_q_values, int seeds, const std::string& out_path);

// Loads the table from the given paths whose fingerprint matches cfg
// (after applying the alpha override); throws with a pointer to lut-build
// when none matches.
LookupTable load_matching_lut(const AppConfig& cfg, double alpha, const std::vector<std::string>& lut_paths);

} // namespace thztrack
