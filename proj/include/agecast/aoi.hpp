#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "agecast/channel.hpp"

namespace agecast {

// The three transmit actions: a fresh packet for user 1, a fresh packet for
// user 2, or the XOR of the two overheard-queue packets.
enum class Action : int { kUser1 = 1, kUser2 = 2, kXor = 3 };

constexpr int user_of(Action a) { return a == Action::kUser2 ? 2 : 1; }

// Slot state: instantaneous ages h1, h2 (>= 1) and the ages w1, w2 of the
// packets sitting in the overheard queues, with w = 0 meaning "queue empty".
// Reachable states satisfy w_i <= h_i - 1.
struct AoiState {
  std::int64_t h1 = 1;
  std::int64_t h2 = 1;
  std::int64_t w1 = 0;
  std::int64_t w2 = 0;

  friend bool operator==(const AoiState&, const AoiState&) = default;
};

inline bool satisfies_invariants(const AoiState& s) {
  return s.h1 >= 1 && s.h2 >= 1 && s.w1 >= 0 && s.w2 >= 0 &&
         s.w1 <= s.h1 - 1 && s.w2 <= s.h2 - 1;
}

struct AgeWeights {
  double alpha1 = 0.5;
  double alpha2 = 0.5;
};

// Requires alpha_i >= 0 and alpha1 + alpha2 = 1 (tolerance 1e-12).
AgeWeights validate_weights(double alpha1, double alpha2);

inline AgeWeights weights_from_alpha1(double alpha1) {
  return validate_weights(alpha1, 1.0 - alpha1);
}

// One slot of the deterministic state machine. A coded delivery resets the
// age only from a non-empty overheard queue; a direct delivery makes the
// queued packet obsolete and empties the queue.
inline AoiState step(const AoiState& s, Action a, ErasurePair z) {
  const bool zi[2] = {z.z1, z.z2};
  const std::int64_t h[2] = {s.h1, s.h2};
  const std::int64_t w[2] = {s.w1, s.w2};
  std::int64_t nh[2], nw[2];
  for (int i = 0; i < 2; ++i) {
    const int o = 1 - i;
    const bool direct = user_of(a) == i + 1 && a != Action::kXor;
    const bool coded = a == Action::kXor;
    if (direct && zi[i]) {
      nh[i] = 1;
    } else if (coded && zi[i] && w[i] > 0) {
      nh[i] = w[i] + 1;
    } else {
      nh[i] = h[i] + 1;
    }
    if ((direct || coded) && zi[i]) {
      nw[i] = 0;
    } else if (direct && !zi[i] && zi[o]) {
      nw[i] = 1;
    } else {
      nw[i] = w[i] > 0 ? w[i] + 1 : 0;
    }
  }
  return {nh[0], nh[1], nw[0], nw[1]};
}

// Replays an explicit action/erasure script; returns the state after each
// slot (size = script length).
std::vector<AoiState> replay(const AoiState& initial,
                             std::span<const Action> actions,
                             std::span<const ErasurePair> erasures);

// Finite-horizon weighted-sum age (1/2T) * sum_k (a1*h1(k) + a2*h2(k)).
// Ages are integers, so the sum is accumulated exactly before the division.
double ewsaoi_accumulate(std::span<const std::array<std::int64_t, 2>> h_trajectory,
                         const AgeWeights& weights);

// Age accumulated over one inter-delivery interval of length `gap` starting
// from post-delivery age `prev_age`: gap*(gap-1)/2 + prev_age*gap.
inline std::int64_t interval_age_sum(std::int64_t gap, std::int64_t prev_age) {
  return gap * (gap - 1) / 2 + prev_age * gap;
}

// Renewal bookkeeping of one user's delivery log over slots 1..horizon.
struct RenewalStats {
  std::int64_t deliveries = 0;                   // N(T)
  std::vector<std::int64_t> inter_delivery;      // I(m), I(1) measured from 0
  std::vector<std::int64_t> age_at_delivery;     // D(m)
  std::vector<std::int64_t> interval_age_sum;    // Delta[m], integer-exact
  std::int64_t residual = 0;                     // L = T - last delivery
};

// `delivery_times` strictly increasing in [1, horizon]; `ages` gives D(m)
// (same length; empty means every delivery is fresh, D = 1). `initial_age`
// plays the role of D(0) for the first interval. The identity
// horizon = sum I(m) + L holds exactly.
RenewalStats renewal_decompose(std::span<const std::int64_t> delivery_times,
                               std::span<const std::int64_t> ages,
                               std::int64_t horizon,
                               std::int64_t initial_age = 1);

}  // namespace agecast
