#pragma once

#include <stdexcept>

#include "agecast/rng.hpp"

namespace agecast {

// Reception indicators for one slot. z = true means the packet was received.
struct ErasurePair {
  bool z1 = true;
  bool z2 = true;
};

// Erasure law of the two-user broadcast channel: marginal erasure
// probabilities eps1, eps2 and the simultaneous-erasure probability eps12.
//
// Valid parameters satisfy 0 <= eps12 <= min(eps1, eps2) and eps_i < 1.
// When 1 - eps1 - eps2 + eps12 >= 0 the full four-cell joint law of
// (Z1, Z2) exists and has_joint_law() is true. Below that bound (which the
// eps12 = eps^2/5 sweep family crosses at high eps) no joint coupling exists;
// only each user's three-way law {delivered, overheard-only, lost-at-both}
// is defined, and sampling must go through the per-slot-kind samplers below.
class ChannelParams {
 public:
  static ChannelParams validated(double eps1, double eps2, double eps12);

  double eps1() const { return eps1_; }
  double eps2() const { return eps2_; }
  double eps12() const { return eps12_; }
  double eps(int user) const { return user == 1 ? eps1_ : eps2_; }

  bool has_joint_law() const { return 1.0 - eps1_ - eps2_ + eps12_ >= 0.0; }

  // Four-cell joint law, meaningful only when has_joint_law().
  double p00() const { return eps12_; }
  double p01() const { return eps1_ - eps12_; }
  double p10() const { return eps2_ - eps12_; }
  double p11() const { return 1.0 - eps1_ - eps2_ + eps12_; }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  ChannelParams(double e1, double e2, double e12)
      : eps1_(e1), eps2_(e2), eps12_(e12) {}

  double eps1_;
  double eps2_;
  double eps12_;
};

ChannelParams validate_params(double eps1, double eps2, double eps12);

// One slot of the joint channel: a single uniform draw partitioned over the
// four-cell table, so the joint law is exact by construction.
// Throws std::domain_error when no joint law exists.
inline ErasurePair sample_erasures(const ChannelParams& p, SplitMix64& rng) {
  if (!p.has_joint_law()) {
    throw std::domain_error(
        "sample_erasures: no joint law for eps12 < eps1 + eps2 - 1; use the "
        "per-slot-kind samplers");
  }
  const double u = rng.next_double();
  if (u < p.eps12()) return {false, false};
  if (u < p.eps1()) return {false, true};
  if (u < p.eps1() + p.eps2() - p.eps12()) return {true, false};
  return {true, true};
}

// Slot whose packet is intended for `user` (1 or 2): draws that user's
// trinary {delivered (1-eps_i), overheard only (eps_i-eps12), lost at both
// (eps12)} with a single uniform. In the returned pair the scheduled user's
// component is its reception and the other component is the overhear
// indicator; the state recursion reads nothing else on such slots. Defined
// for every valid ChannelParams.
inline ErasurePair sample_erasures_uncoded_slot(const ChannelParams& p,
                                                int user, SplitMix64& rng) {
  const double ei = p.eps(user);
  const double u = rng.next_double();
  bool zi = false, zo = true;
  if (u < 1.0 - ei) {
    zi = true;  // delivered; overhear indicator unused downstream
  } else if (u >= 1.0 - p.eps12()) {
    zo = false;  // lost at both
  }
  return user == 1 ? ErasurePair{zi, zo} : ErasurePair{zo, zi};
}

// Coded slot when no joint law exists: the two receptions are drawn
// independently, user 1 first. Marginals are exact; the cross-user coupling
// is the one remaining free choice and is pinned here for reproducibility.
inline ErasurePair sample_erasures_coded_slot(const ChannelParams& p,
                                              SplitMix64& rng) {
  const bool z1 = rng.next_double() < 1.0 - p.eps1();
  const bool z2 = rng.next_double() < 1.0 - p.eps2();
  return {z1, z2};
}

}  // namespace agecast
