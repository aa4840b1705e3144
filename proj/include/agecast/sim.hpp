#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "agecast/aoi.hpp"
#include "agecast/channel.hpp"
#include "agecast/policies.hpp"
#include "agecast/stats.hpp"

namespace agecast {

struct SimConfig {
  PolicySpec policy;
  ChannelParams channel;
  AgeWeights alphas{0.5, 0.5};
  std::int64_t horizon = 1'000'000;
  int replications = 20;
  std::uint64_t base_seed = 1;
  AoiState initial_state{};
  bool collect_samples = false;  // keep per-delivery logs in the result
};

struct UserStats {
  std::int64_t deliveries = 0;
  double throughput = 0;
  std::uint64_t age_sum = 0;  // sum of h over slots 1..T, exact
  double interdelivery_mean = 0;
  double interdelivery_second_moment = 0;
  double mean_age_at_delivery = 0;
  double q2_empty_fraction = 0;
  std::int64_t residual = 0;              // T - last delivery time
  std::int64_t last_age_at_delivery = 0;  // D(N), 0 if no deliveries
  // Populated only when SimConfig::collect_samples is set.
  std::vector<std::int64_t> delivery_times;
  std::vector<std::int64_t> inter_delivery_samples;
  std::vector<std::int64_t> age_at_delivery_samples;
};

struct SimResult {
  double ewsaoi = 0;
  std::int64_t horizon = 0;
  std::array<std::int64_t, 3> action_counts{};
  std::array<UserStats, 2> user;
};

// One run over `horizon` slots. Deterministic given (config, seed); the
// renewal identity T = sum I(m) + L holds exactly in the result.
SimResult run_simulation(const SimConfig& config, std::uint64_t seed);

struct ReplicateResult {
  double mean = 0;
  double ci_halfwidth = 0;  // 95%, Student-t over replicate means
  double std_error = 0;
  std::vector<SimResult> replicates;
};

// Runs config.replications independent replicates with seeds
// derive_seed(base_seed, r). Replicates may execute on `threads` workers;
// results are keyed by index and identical to sequential execution.
// Requires replications >= 2.
ReplicateResult replicate(const SimConfig& config, int threads = 0);

}  // namespace agecast
