#include "agecast/sim.hpp"

#include <functional>
#include <stdexcept>
#include <thread>

namespace agecast {

namespace {

void validate_config(const SimConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!satisfies_invariants(cfg.initial_state)) {
    throw std::invalid_argument("initial state violates invariants");
  }
  if (cfg.policy.kind == PolicyKind::kRandomized) {
    validate_action_weights(cfg.policy.mu.mu1, cfg.policy.mu.mu2,
                            cfg.policy.mu.mu3);
    if (!cfg.policy.coded && cfg.policy.mu.mu3 != 0.0) {
      throw std::invalid_argument(
          "uncoded randomized policy must have mu3 = 0 (see uncoded_variant)");
    }
  }
  validate_weights(cfg.alphas.alpha1, cfg.alphas.alpha2);
}

// Static index partition; results keyed by index, so parallel == sequential.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SimResult run_simulation(const SimConfig& cfg, std::uint64_t seed) {
  validate_config(cfg);
  SplitMix64 rng(seed);
  const ChannelParams& ch = cfg.channel;
  const bool joint = ch.has_joint_law();
  const std::int64_t horizon = cfg.horizon;

  AoiState s = cfg.initial_state;
  std::uint64_t age_sum[2] = {0, 0};
  std::int64_t empty_slots[2] = {0, 0};
  std::int64_t deliveries[2] = {0, 0};
  std::int64_t last_delivery[2] = {0, 0};
  std::int64_t last_age[2] = {0, 0};
  double gap_sum[2] = {0, 0};
  double gap_sq_sum[2] = {0, 0};
  double age_at_delivery_sum[2] = {0, 0};
  SimResult out;
  if (cfg.collect_samples) {
    for (auto& u : out.user) {
      u.delivery_times.reserve(1024);
      u.inter_delivery_samples.reserve(1024);
      u.age_at_delivery_samples.reserve(1024);
    }
  }

  for (std::int64_t k = 1; k <= horizon; ++k) {
    age_sum[0] += static_cast<std::uint64_t>(s.h1);
    age_sum[1] += static_cast<std::uint64_t>(s.h2);
    if (s.w1 == 0) ++empty_slots[0];
    if (s.w2 == 0) ++empty_slots[1];

    const Action a = choose_action(cfg.policy, s, cfg.alphas, ch, rng);
    ++out.action_counts[static_cast<int>(a) - 1];
    const ErasurePair z =
        joint ? sample_erasures(ch, rng)
              : (a == Action::kXor
                     ? sample_erasures_coded_slot(ch, rng)
                     : sample_erasures_uncoded_slot(ch, user_of(a), rng));

    const std::int64_t w[2] = {s.w1, s.w2};
    const bool zi[2] = {z.z1, z.z2};
    for (int i = 0; i < 2; ++i) {
      const bool direct = a != Action::kXor && user_of(a) == i + 1;
      const bool delivered =
          zi[i] && (direct || (a == Action::kXor && w[i] > 0));
      if (!delivered) continue;
      const std::int64_t gap = k - last_delivery[i];
      const std::int64_t age = direct ? 1 : w[i] + 1;
      ++deliveries[i];
      last_delivery[i] = k;
      last_age[i] = age;
      gap_sum[i] += static_cast<double>(gap);
      gap_sq_sum[i] += static_cast<double>(gap) * static_cast<double>(gap);
      age_at_delivery_sum[i] += static_cast<double>(age);
      if (cfg.collect_samples) {
        out.user[i].delivery_times.push_back(k);
        out.user[i].inter_delivery_samples.push_back(gap);
        out.user[i].age_at_delivery_samples.push_back(age);
      }
    }
    s = step(s, a, z);
  }

  out.horizon = horizon;
  const double t = static_cast<double>(horizon);
  out.ewsaoi = (cfg.alphas.alpha1 * static_cast<double>(age_sum[0]) +
                cfg.alphas.alpha2 * static_cast<double>(age_sum[1])) /
               (2.0 * t);
  for (int i = 0; i < 2; ++i) {
    UserStats& u = out.user[i];
    u.deliveries = deliveries[i];
    u.throughput = static_cast<double>(deliveries[i]) / t;
    u.age_sum = age_sum[i];
    u.q2_empty_fraction = static_cast<double>(empty_slots[i]) / t;
    u.residual = horizon - last_delivery[i];
    u.last_age_at_delivery = last_age[i];
    if (deliveries[i] > 0) {
      const double n = static_cast<double>(deliveries[i]);
      u.interdelivery_mean = gap_sum[i] / n;
      u.interdelivery_second_moment = gap_sq_sum[i] / n;
      u.mean_age_at_delivery = age_at_delivery_sum[i] / n;
    }
  }
  return out;
}

ReplicateResult replicate(const SimConfig& cfg, int threads) {
  validate_config(cfg);
  if (cfg.replications < 2) {
    throw std::invalid_argument("replicate: need R >= 2 for a CI");
  }
  ReplicateResult out;
  out.replicates.resize(cfg.replications);
  parallel_for(cfg.replications, threads, [&](int r) {
    out.replicates[r] =
        run_simulation(cfg, derive_seed(cfg.base_seed,
                                        static_cast<std::uint64_t>(r)));
  });
  std::vector<double> means;
  means.reserve(cfg.replications);
  for (const SimResult& r : out.replicates) means.push_back(r.ewsaoi);
  const MeanCi ci = mean_ci(means);
  out.mean = ci.mean;
  out.std_error = ci.std_error;
  out.ci_halfwidth = ci.halfwidth;
  return out;
}

}  // namespace agecast
