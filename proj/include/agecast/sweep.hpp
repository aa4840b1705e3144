#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "agecast/aoi.hpp"

namespace agecast {

// Erasure sweep comparing the five curves: universal lower bound, optimized
// coded/uncoded randomized (closed form), simulated coded/uncoded Max-Weight,
// plus the minimized Max-Weight upper bound. eps12 = eps^2/5 at every point.
struct SweepConfig {
  AgeWeights alphas{0.3, 0.7};
  double eps_begin = 0.10;
  double eps_end = 0.95;
  double eps_step = 0.05;
  std::int64_t horizon = 1'000'000;
  int replications = 20;
  std::uint64_t base_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  double epsilon = 0;
  double eps12 = 0;
  double lower_bound = 0;
  double coded_rand = 0;
  double uncoded_rand = 0;
  double coded_mw_mean = 0;
  double coded_mw_ci = 0;
  double uncoded_mw_mean = 0;
  double uncoded_mw_ci = 0;
  double mw_bound = 0;
  // Not part of the CSV schema; kept for bound/ordering checks.
  double coded_mw_std_error = 0;
  double uncoded_mw_std_error = 0;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Full-precision CSV (17 significant digits), one row per epsilon:
// epsilon,eps12,lower_bound,coded_rand,uncoded_rand,coded_mw_mean,
// coded_mw_ci,uncoded_mw_mean,uncoded_mw_ci,mw_bound
void write_sweep_csv(const std::filesystem::path& out,
                     std::span<const SweepRow> rows);

// Companion 4-digit report for eyeballing.
void write_sweep_report(const std::filesystem::path& out,
                        std::span<const SweepRow> rows);

}  // namespace agecast
