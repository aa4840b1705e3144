#pragma once

#include <cstdint>

#include "agecast/aoi.hpp"
#include "agecast/channel.hpp"
#include "agecast/policies.hpp"

namespace agecast {

// Closed-form expressions for the two-user broadcast setting. Per-user
// quantities are written for user 1; passing user = 2 swaps the indices
// internally.

// Universal lower bound on the expected weighted-sum age, valid for every
// transmission policy (coded or not).
double lower_bound(const AgeWeights& alphas, const ChannelParams& params);

// Throughput region of the channel with feedback:
// r1/(1-eps1) + r2/(1-eps12) <= 1 and r1/(1-eps12) + r2/(1-eps2) <= 1.
bool capacity_region_contains(double r1, double r2,
                              const ChannelParams& params);

// Constants of the inter-delivery distribution
// P(I = l) = delta1 * x1^(l-1) + beta1 * y1^(l-1) under a randomized policy.
// z1 is the geometric base of the delivery-age tail and is kept for the
// path-decomposition oracle.
struct InterDeliveryParams {
  double x1 = 0;
  double y1 = 0;
  double z1 = 0;
  double delta1 = 0;
  double beta1 = 0;
};

// Throws std::domain_error on the degenerate line
// mu3(1-eps_i) = mu_i(eps_i-eps12), where x1 = y1 and the two-geometric form
// collapses (randomized_ewsaoi still handles that line via its confluent
// branch).
InterDeliveryParams interdelivery_params(const ActionWeights& mu,
                                         const ChannelParams& params,
                                         int user = 1);

double inter_delivery_pmf(const InterDeliveryParams& idp, std::int64_t ell);

struct Moments {
  double mean = 0;
  double second_moment = 0;
};

Moments inter_delivery_moments(const InterDeliveryParams& idp);

// Probability that a packet is delivered to the user in a given slot.
double delivery_probability(const ActionWeights& mu,
                            const ChannelParams& params, int user = 1);

// P(D = d): the age a delivery resets to (1 for a fresh packet, w+1 for a
// coded one).
double delivery_age_pmf(const ActionWeights& mu, const ChannelParams& params,
                        std::int64_t d, int user = 1);

// E[D] = 1 + mu3(eps_i-eps12) / ((mu_i+mu3)(1-eps12)(1-z1)).
double expected_delivery_age(const ActionWeights& mu,
                             const ChannelParams& params, int user = 1);

// Long-run EWSAoI of the stationary randomized policy, evaluated from the
// closed form. Removable 0/0 points (mu3 = 0, eps_i = eps12, and the
// confluent x1 = y1 line) are evaluated via their algebraic limits.
// Throws std::domain_error when mu1 = 0 or mu2 = 0 (age diverges).
double randomized_ewsaoi(const AgeWeights& alphas, const ActionWeights& mu,
                         const ChannelParams& params);

// Independent second route: per-user E[I^2]/(2 E[I]) + E[D] - 1/2 assembled
// from the ingredient operations. Used to cross-check randomized_ewsaoi.
double randomized_ewsaoi_assembled(const AgeWeights& alphas,
                                   const ActionWeights& mu,
                                   const ChannelParams& params);

// Symmetric case (mu1 = mu2 = mu, mu3 = 1-2mu, eps1 = eps2 = eps,
// alpha1 = alpha2 = alpha), as a closed form in (alpha, mu, eps, eps12).
double symmetric_ewsaoi(double alpha, double mu, double eps, double eps12);

// Minimizer of the symmetric EWSAoI over mu in (0, 1/2]:
// sqrt(1-eps) / (sqrt(1-eps) + sqrt(eps-eps12)) when eps12 - 2 eps + 1 < 0,
// else 1/2 (the coded action is never worth scheduling).
double optimal_mu_symmetric(double eps, double eps12);

// True iff the optimal symmetric coded policy strictly beats the uncoded one.
bool coding_beneficial(double eps, double eps12);

struct OptimizeResult {
  ActionWeights mu;
  double value = 0;
};

// Deterministic minimization of randomized_ewsaoi over the probability
// simplex: coarse grid (step 0.01), then coordinate-wise golden-section
// refinement to `tolerance` (default 1e-6). `coded` = false restricts to
// mu3 = 0.
OptimizeResult optimize_randomized(const AgeWeights& alphas,
                                   const ChannelParams& params,
                                   double tolerance = 1e-6, bool coded = true);

// Stationary empty probability of a buffer-1 queue with Bernoulli arrivals
// (rate lambda) and departures (rate mu): mu(1-lambda)/(mu+lambda-mu*lambda).
double empty_queue_prob(double arrival_rate, double departure_rate);

// Occupancy of the overheard queue under a randomized policy, exactly as the
// upper-bound analysis models it: arrivals mu_i(eps_i-eps12), departures
// mu3(1-eps_i). (The model ignores obsolescence wipes by direct deliveries,
// so the simulated empty fraction runs higher; both are reported by the CLI.)
double q2_nonempty_prob(const ActionWeights& mu, double eps_i, double eps12,
                        int user = 1);

struct MwBoundTerms {
  double phi = 0;
  double psi = 0;
  double p_ne = 0;
};

MwBoundTerms mw_bound_terms(const ActionWeights& mu,
                            const ChannelParams& params, int user = 1);

// Upper bound on the Max-Weight EWSAoI, parameterized by any probability
// vector mu with mu_i(1-eps_i) > 0 for both users. Minimize over mu for the
// tightest version.
double mw_upper_bound(const AgeWeights& alphas, const ActionWeights& mu,
                      const ChannelParams& params);

OptimizeResult minimize_mw_upper_bound(const AgeWeights& alphas,
                                       const ChannelParams& params,
                                       double tolerance = 1e-6);

// Exact conditional one-slot drift of L(h) = (1/2) sum_i alpha_i h_i^2 under
// the given action. The Max-Weight choice is its argmin.
double one_slot_drift(const AoiState& state, Action action,
                      const AgeWeights& alphas, const ChannelParams& params);

}  // namespace agecast
