#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <vector>

#include "agecast/aoi.hpp"
#include "agecast/policies.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace agecast;

namespace {

const AoiState kSamplePathStart{3, 4, 1, 2};

}  // namespace

TEST_CASE("single-slot transitions") {
  CHECK(step({3, 4, 1, 2}, Action::kUser2, {true, true}) ==
        AoiState{4, 1, 2, 0});
  CHECK(step({3, 4, 2, 1}, Action::kXor, {true, true}) ==
        AoiState{3, 2, 0, 0});
  // Coded slot with both queues empty delivers nothing.
  CHECK(step({5, 5, 0, 0}, Action::kXor, {true, true}) ==
        AoiState{6, 6, 0, 0});
  // Direct delivery obsoletes the queued packet.
  CHECK(step({5, 5, 3, 2}, Action::kUser1, {true, false}) ==
        AoiState{1, 6, 0, 3});
  // Overheard fresh packet replaces the queue content with age 1.
  CHECK(step({5, 5, 3, 2}, Action::kUser1, {false, true}) ==
        AoiState{6, 6, 1, 3});
  // Coded delivery to one user only.
  CHECK(step({5, 6, 2, 3}, Action::kXor, {true, false}) ==
        AoiState{3, 7, 0, 4});
}

TEST_CASE("five-slot sample path replay") {
  const std::vector<Action> actions{Action::kUser2, Action::kUser1,
                                    Action::kUser1, Action::kUser2,
                                    Action::kXor};
  const std::vector<ErasurePair> erasures{{true, true},
                                          {true, false},
                                          {false, true},
                                          {true, false},
                                          {true, true}};
  const auto states = replay(kSamplePathStart, actions, erasures);
  const std::vector<AoiState> expected{{4, 1, 2, 0},
                                       {1, 2, 0, 0},
                                       {2, 3, 1, 0},
                                       {3, 4, 2, 1},
                                       {3, 2, 0, 0}};
  CHECK(states == expected);
  CHECK_THROWS_AS(replay({0, 1, 0, 0}, actions, erasures),
                  std::invalid_argument);
}

TEST_CASE("step preserves the state invariants and is deterministic") {
  SplitMix64 rng(5);
  for (int cfg = 0; cfg < 3; ++cfg) {
    const ChannelParams ch = test_util::random_joint_channel(rng);
    AoiState s = cfg == 0 ? kSamplePathStart : AoiState{};
    for (int k = 0; k < 20000; ++k) {
      const Action a = static_cast<Action>(1 + rng.next() % 3);
      const ErasurePair z = sample_erasures(ch, rng);
      const AoiState n1 = step(s, a, z);
      const AoiState n2 = step(s, a, z);
      CHECK(n1 == n2);
      REQUIRE(satisfies_invariants(n1));
      // Obsolescence after a successful direct delivery.
      if (a != Action::kXor) {
        const bool zi = user_of(a) == 1 ? z.z1 : z.z2;
        if (zi) CHECK((user_of(a) == 1 ? n1.w1 : n1.w2) == 0);
      }
      s = n1;
    }
  }
}

TEST_CASE("finite-horizon weighted age") {
  std::vector<std::array<std::int64_t, 2>> flat(1000, {1, 1});
  CHECK(ewsaoi_accumulate(flat, {0.3, 0.7}) == doctest::Approx(0.5).epsilon(1e-15));

  const std::vector<std::array<std::int64_t, 2>> trace{
      {3, 4}, {4, 1}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(ewsaoi_accumulate(trace, {0.5, 0.5}) ==
        doctest::Approx(1.35).epsilon(1e-15));

  std::vector<std::array<std::int64_t, 2>> constant(77, {5, 9});
  CHECK(ewsaoi_accumulate(constant, {0.25, 0.75}) ==
        doctest::Approx((0.25 * 5 + 0.75 * 9) / 2).epsilon(1e-15));

  CHECK_THROWS_AS(ewsaoi_accumulate({}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("renewal decomposition") {
  const std::vector<std::int64_t> times{2, 5};
  const RenewalStats r = renewal_decompose(times, {}, 7);
  CHECK(r.deliveries == 2);
  CHECK(r.inter_delivery == std::vector<std::int64_t>{2, 3});
  CHECK(r.residual == 2);
  CHECK(r.inter_delivery[0] + r.inter_delivery[1] + r.residual == 7);

  CHECK(interval_age_sum(4, 1) == 10);  // 16/2 + 4 - 2

  const RenewalStats none = renewal_decompose({}, {}, 9);
  CHECK(none.deliveries == 0);
  CHECK(none.residual == 9);

  CHECK_THROWS_AS(renewal_decompose(std::vector<std::int64_t>{5, 2}, {}, 7),
                  std::invalid_argument);
  CHECK_THROWS_AS(renewal_decompose(std::vector<std::int64_t>{2, 9}, {}, 7),
                  std::invalid_argument);
}

TEST_CASE("slot sum equals the renewal reconstruction, exactly") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const ChannelParams ch = test_util::random_joint_channel(rng, 0.05, 0.8);
    const ActionWeights mu = test_util::random_simplex(rng);
    const std::int64_t horizon = 50 + static_cast<std::int64_t>(rng.next() % 150);

    AoiState s{};
    std::int64_t age_sum[2] = {0, 0};
    std::vector<std::array<std::int64_t, 2>> trajectory;
    std::vector<std::int64_t> times[2], ages[2];
    for (std::int64_t k = 1; k <= horizon; ++k) {
      age_sum[0] += s.h1;
      age_sum[1] += s.h2;
      trajectory.push_back({s.h1, s.h2});
      const Action a = randomized_choose(mu, rng);
      const ErasurePair z = sample_erasures(ch, rng);
      const std::int64_t w[2] = {s.w1, s.w2};
      const bool zi[2] = {z.z1, z.z2};
      for (int i = 0; i < 2; ++i) {
        const bool direct = a != Action::kXor && user_of(a) == i + 1;
        if (zi[i] && (direct || (a == Action::kXor && w[i] > 0))) {
          times[i].push_back(k);
          ages[i].push_back(direct ? 1 : w[i] + 1);
        }
      }
      s = step(s, a, z);
    }
    std::int64_t reconstructed[2] = {0, 0};
    for (int i = 0; i < 2; ++i) {
      const RenewalStats r = renewal_decompose(times[i], ages[i], horizon, 1);
      std::int64_t total = 0;
      for (std::int64_t d : r.interval_age_sum) total += d;
      const std::int64_t last_age =
          r.deliveries > 0 ? r.age_at_delivery.back() : 1;
      total += interval_age_sum(r.residual, last_age);
      REQUIRE(total == age_sum[i]);
      reconstructed[i] = total;
      // horizon identity, exact
      std::int64_t gaps = 0;
      for (std::int64_t g : r.inter_delivery) gaps += g;
      REQUIRE(gaps + r.residual == horizon);
    }
    // the accumulated objective equals its renewal reconstruction
    const double direct = ewsaoi_accumulate(trajectory, {0.3, 0.7});
    const double via_renewal =
        (0.3 * static_cast<double>(reconstructed[0]) +
         0.7 * static_cast<double>(reconstructed[1])) /
        (2.0 * static_cast<double>(horizon));
    REQUIRE(direct == via_renewal);
  }
}
