#include "agecast/policies.hpp"

#include <cmath>
#include <stdexcept>

namespace agecast {

ActionWeights validate_action_weights(double mu1, double mu2, double mu3) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(mu3) ||
      mu1 < 0.0 || mu2 < 0.0 || mu3 < 0.0) {
    throw std::invalid_argument(
        "action weights must be finite and nonnegative");
  }
  if (std::abs(mu1 + mu2 + mu3 - 1.0) > 1e-12) {
    throw std::invalid_argument("action weights must sum to 1");
  }
  return {mu1, mu2, mu3};
}

ActionWeights uncoded_variant(const ActionWeights& w) {
  const double mass = w.mu1 + w.mu2;
  if (mass <= 0.0) {
    throw std::domain_error(
        "uncoded_variant: mu1 + mu2 = 0 leaves no action to renormalize");
  }
  return {w.mu1 / mass, w.mu2 / mass, 0.0};
}

PolicySpec uncoded_variant(const PolicySpec& p) {
  PolicySpec out = p;
  out.coded = false;
  if (p.kind == PolicyKind::kRandomized) out.mu = uncoded_variant(p.mu);
  return out;
}

}  // namespace agecast
