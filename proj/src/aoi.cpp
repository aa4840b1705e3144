#include "agecast/aoi.hpp"

#include <cmath>
#include <stdexcept>

namespace agecast {

AgeWeights validate_weights(double alpha1, double alpha2) {
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2) || alpha1 < 0.0 ||
      alpha2 < 0.0) {
    throw std::invalid_argument("age weights must be finite and nonnegative");
  }
  if (std::abs(alpha1 + alpha2 - 1.0) > 1e-12) {
    throw std::invalid_argument("age weights must sum to 1");
  }
  return {alpha1, alpha2};
}

std::vector<AoiState> replay(const AoiState& initial,
                             std::span<const Action> actions,
                             std::span<const ErasurePair> erasures) {
  if (actions.size() != erasures.size()) {
    throw std::invalid_argument("replay: one erasure pair per action");
  }
  if (!satisfies_invariants(initial)) {
    throw std::invalid_argument("replay: invalid initial state");
  }
  std::vector<AoiState> out;
  out.reserve(actions.size());
  AoiState s = initial;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    s = step(s, actions[k], erasures[k]);
    out.push_back(s);
  }
  return out;
}

double ewsaoi_accumulate(
    std::span<const std::array<std::int64_t, 2>> h_trajectory,
    const AgeWeights& weights) {
  if (h_trajectory.empty()) {
    throw std::invalid_argument("ewsaoi_accumulate: empty trajectory");
  }
  std::uint64_t s1 = 0, s2 = 0;
  for (const auto& h : h_trajectory) {
    if (h[0] < 1 || h[1] < 1) {
      throw std::invalid_argument("ewsaoi_accumulate: ages must be >= 1");
    }
    s1 += static_cast<std::uint64_t>(h[0]);
    s2 += static_cast<std::uint64_t>(h[1]);
  }
  const double t = static_cast<double>(h_trajectory.size());
  return (weights.alpha1 * static_cast<double>(s1) +
          weights.alpha2 * static_cast<double>(s2)) /
         (2.0 * t);
}

RenewalStats renewal_decompose(std::span<const std::int64_t> delivery_times,
                               std::span<const std::int64_t> ages,
                               std::int64_t horizon,
                               std::int64_t initial_age) {
  if (horizon < 1) throw std::invalid_argument("renewal_decompose: T >= 1");
  if (!ages.empty() && ages.size() != delivery_times.size()) {
    throw std::invalid_argument(
        "renewal_decompose: ages must be empty or match delivery times");
  }
  RenewalStats r;
  r.deliveries = static_cast<std::int64_t>(delivery_times.size());
  r.inter_delivery.reserve(delivery_times.size());
  r.age_at_delivery.reserve(delivery_times.size());
  r.interval_age_sum.reserve(delivery_times.size());
  std::int64_t prev_time = 0;
  std::int64_t prev_age = initial_age;
  for (std::size_t m = 0; m < delivery_times.size(); ++m) {
    const std::int64_t t = delivery_times[m];
    if (t <= prev_time || t > horizon) {
      throw std::invalid_argument(
          "renewal_decompose: delivery times must be strictly increasing and "
          "within the horizon");
    }
    const std::int64_t age = ages.empty() ? 1 : ages[m];
    if (age < 1) throw std::invalid_argument("renewal_decompose: D >= 1");
    const std::int64_t gap = t - prev_time;
    r.inter_delivery.push_back(gap);
    r.age_at_delivery.push_back(age);
    r.interval_age_sum.push_back(interval_age_sum(gap, prev_age));
    prev_time = t;
    prev_age = age;
  }
  r.residual = horizon - prev_time;
  return r;
}

}  // namespace agecast
