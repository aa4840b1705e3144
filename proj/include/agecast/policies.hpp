#pragma once

#include "agecast/aoi.hpp"
#include "agecast/channel.hpp"
#include "agecast/rng.hpp"

namespace agecast {

// Probability vector over the three actions.
struct ActionWeights {
  double mu1 = 1.0 / 3;
  double mu2 = 1.0 / 3;
  double mu3 = 1.0 / 3;

  double mu(int user) const { return user == 1 ? mu1 : mu2; }
};

// Requires mu_i >= 0 and mu1 + mu2 + mu3 = 1 (tolerance 1e-12).
ActionWeights validate_action_weights(double mu1, double mu2, double mu3);

// Drops action 3 and renormalizes mu1, mu2 proportionally.
// Throws if mu1 + mu2 = 0.
ActionWeights uncoded_variant(const ActionWeights& w);

// Stationary randomized policy: action i with probability mu_i, independent
// of state and history. One uniform draw per call.
inline Action randomized_choose(const ActionWeights& w, SplitMix64& rng) {
  const double u = rng.next_double();
  if (u < w.mu1) return Action::kUser1;
  if (u < w.mu1 + w.mu2) return Action::kUser2;
  return Action::kXor;
}

struct MwWeightTriple {
  double w_action1 = 0;
  double w_action2 = 0;
  double w_action3 = 0;
};

// Max-Weight table: W_i = alpha_i(1-eps_i)/2 * h_i(h_i+2) for the direct
// actions, and the coded action scores each user with a non-empty overheard
// queue by alpha_i(1-eps_i)(h_i^2+2h_i-w_i^2-2w_i)/2.
inline MwWeightTriple mw_weights(const AoiState& s, const AgeWeights& a,
                                 const ChannelParams& p) {
  const double h1 = static_cast<double>(s.h1);
  const double h2 = static_cast<double>(s.h2);
  const double g1 = a.alpha1 * (1.0 - p.eps1());
  const double g2 = a.alpha2 * (1.0 - p.eps2());
  double w3 = 0.0;
  if (s.w1 > 0) {
    const double w1 = static_cast<double>(s.w1);
    w3 += g1 * (h1 * h1 + 2.0 * h1 - w1 * w1 - 2.0 * w1);
  }
  if (s.w2 > 0) {
    const double w2 = static_cast<double>(s.w2);
    w3 += g2 * (h2 * h2 + 2.0 * h2 - w2 * w2 - 2.0 * w2);
  }
  return {0.5 * g1 * h1 * (h1 + 2.0), 0.5 * g2 * h2 * (h2 + 2.0), 0.5 * w3};
}

// Argmax of the weight table; ties go to the lowest action index so runs are
// reproducible.
inline Action mw_choose(const AoiState& s, const AgeWeights& a,
                        const ChannelParams& p) {
  const MwWeightTriple t = mw_weights(s, a, p);
  Action best = Action::kUser1;
  double w = t.w_action1;
  if (t.w_action2 > w) {
    best = Action::kUser2;
    w = t.w_action2;
  }
  if (t.w_action3 > w) best = Action::kXor;
  return best;
}

// Max-Weight restricted to the two direct actions.
inline Action mw_choose_uncoded(const AoiState& s, const AgeWeights& a,
                                const ChannelParams& p) {
  const MwWeightTriple t = mw_weights(s, a, p);
  return t.w_action2 > t.w_action1 ? Action::kUser2 : Action::kUser1;
}

enum class PolicyKind { kRandomized, kMaxWeight };

struct PolicySpec {
  PolicyKind kind = PolicyKind::kRandomized;
  bool coded = true;
  ActionWeights mu;  // used by randomized policies
};

// Randomized: forces mu3 = 0 with proportional renormalization.
// Max-Weight: restricts the argmax to the direct actions.
PolicySpec uncoded_variant(const PolicySpec& p);

inline Action choose_action(const PolicySpec& p, const AoiState& s,
                            const AgeWeights& a, const ChannelParams& ch,
                            SplitMix64& rng) {
  if (p.kind == PolicyKind::kRandomized) return randomized_choose(p.mu, rng);
  return p.coded ? mw_choose(s, a, ch) : mw_choose_uncoded(s, a, ch);
}

}  // namespace agecast
