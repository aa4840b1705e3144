#include "agecast/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace agecast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index-swapped view: every per-user formula below is written for "user i".
struct UserView {
  double mu_i;
  double mu_o;
  double mu3;
  double eps_i;
  double eps12;
};

UserView view(const ActionWeights& mu, const ChannelParams& p, int user) {
  if (user != 1 && user != 2) {
    throw std::invalid_argument("user index must be 1 or 2");
  }
  if (user == 1) return {mu.mu1, mu.mu2, mu.mu3, p.eps1(), p.eps12()};
  return {mu.mu2, mu.mu1, mu.mu3, p.eps2(), p.eps12()};
}

// 1 - z1 = mu_i(1-eps12) + mu3(1-eps_i), computed without cancellation.
double one_minus_z(const UserView& v) {
  return v.mu_i * (1.0 - v.eps12) + v.mu3 * (1.0 - v.eps_i);
}

// Per-user term of the randomized-policy EWSAoI: E[I^2]/(2E[I]) + E[D] - 1/2.
// The first two summands form the printed ratio N/D; the 0/0 points
// (mu3 = 0, eps_i = eps12, and the confluent line x1 = y1) are evaluated by
// their algebraic limits.
double randomized_user_term(const UserView& v) {
  const double a = v.eps_i - v.eps12;
  const double si = 1.0 - v.eps_i;
  if (v.mu_i <= 0.0) throw std::domain_error("mu_i = 0: age diverges");
  if (v.mu3 <= 1e-12 || a <= 1e-12) return 1.0 / (v.mu_i * si);

  const double c = 1.0 - v.eps12;
  const double p = v.mu3 * si;   // x1 - y1 = p - q
  const double q = v.mu_i * a;
  const double ix = v.mu_i * c;              // 1 - x1
  const double iy = (v.mu_i + v.mu3) * si;   // 1 - y1
  const double tail =
      v.mu3 * a / ((v.mu_i + v.mu3) * c * (v.mu_i * c + v.mu3 * si));

  if (std::abs(p - q) < 1e-9 * (p + q)) {
    // Confluent case: the two geometric bases coincide.
    const double x = 1.0 - ix;
    const double ei = (p + ix) / (ix * ix);
    const double ei2 =
        p * (3.0 + x) / (ix * ix * ix) + (1.0 + x) / (ix * ix);
    return ei2 / (2.0 * ei) + 0.5 + tail;
  }
  const double num = p / (ix * ix) - q / (iy * iy);
  const double den = p / ix - q / iy;
  return num / den + tail;
}

constexpr double kGolden = 0.6180339887498949;

template <class F>
double golden_min(F&& f, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

// Deterministic grid + coordinate-wise golden-section minimization of a
// function of ActionWeights over the simplex (or the mu3 = 0 edge).
template <class F>
OptimizeResult minimize_simplex(F&& f, bool coded, double tol) {
  auto eval = [&](double m1, double m2) -> double {
    if (m1 <= 0.0 || m2 <= 0.0) return kInf;
    double m3 = 1.0 - m1 - m2;
    if (m3 < 0.0) {
      if (m3 < -1e-9) return kInf;
      m3 = 0.0;
    }
    try {
      return f(ActionWeights{m1, m2, m3});
    } catch (const std::exception&) {
      return kInf;
    }
  };

  double b1 = 1.0 / 3, b2 = 1.0 / 3, bv = kInf;
  for (int i = 1; i <= 99; ++i) {
    const double m1 = i / 100.0;
    const int jmax = coded ? 100 - i : 100 - i;
    const int jmin = coded ? 1 : 100 - i;  // uncoded: m2 = 1 - m1 only
    for (int j = jmin; j <= jmax; ++j) {
      const double m2 = j / 100.0;
      const double v = eval(m1, m2);
      if (v < bv) {
        bv = v;
        b1 = m1;
        b2 = m2;
      }
    }
  }

  double window = 0.02;
  const double floor_tol = std::max(tol / 10.0, 1e-9);
  for (int pass = 0; pass < 300 && window > floor_tol; ++pass) {
    double moved = 0.0;
    {
      const double lo = std::max(1e-9, b1 - window);
      const double hi = std::min(coded ? 1.0 - b2 : 1.0 - 1e-9, b1 + window);
      const double n1 = golden_min([&](double m1) { return eval(m1, coded ? b2 : 1.0 - m1); },
                                   lo, hi, floor_tol / 10.0);
      moved = std::max(moved, std::abs(n1 - b1));
      b1 = n1;
      if (!coded) b2 = 1.0 - b1;
    }
    if (coded) {
      const double lo = std::max(1e-9, b2 - window);
      const double hi = std::min(1.0 - b1, b2 + window);
      const double n2 =
          golden_min([&](double m2) { return eval(b1, m2); }, lo, hi,
                     floor_tol / 10.0);
      moved = std::max(moved, std::abs(n2 - b2));
      b2 = n2;
    }
    if (moved < window / 10.0) window = std::max(window / 5.0, floor_tol);
  }

  double m3 = 1.0 - b1 - b2;
  if (m3 < 1e-12) {
    m3 = 0.0;
    b2 = 1.0 - b1;
  }
  ActionWeights mu{b1, b2, m3};
  return {mu, f(mu)};
}

}  // namespace

double lower_bound(const AgeWeights& alphas, const ChannelParams& params) {
  const double e1 = params.eps1(), e2 = params.eps2(), e12 = params.eps12();
  const double root = std::sqrt(alphas.alpha1 * (2.0 - e12 - e2)) +
                      std::sqrt(alphas.alpha2 * (2.0 - e12 - e1));
  return 0.25 * (root * root / ((1.0 - e12) * (2.0 - e1 - e2)) + 1.0);
}

bool capacity_region_contains(double r1, double r2,
                              const ChannelParams& params) {
  if (!(r1 >= 0.0) || !(r2 >= 0.0)) {
    throw std::invalid_argument("rates must be nonnegative");
  }
  const double c1 = r1 / (1.0 - params.eps1()) + r2 / (1.0 - params.eps12());
  const double c2 = r1 / (1.0 - params.eps12()) + r2 / (1.0 - params.eps2());
  return c1 <= 1.0 && c2 <= 1.0;
}

InterDeliveryParams interdelivery_params(const ActionWeights& mu,
                                         const ChannelParams& params,
                                         int user) {
  const UserView v = view(mu, params, user);
  InterDeliveryParams out;
  out.x1 = v.mu_i * v.eps12 + v.mu_o + v.mu3;
  out.y1 = v.mu_i * v.eps_i + v.mu_o + v.mu3 * v.eps_i;
  out.z1 = v.mu_i * v.eps12 + v.mu_o + v.mu3 * v.eps_i;
  const double a = v.eps_i - v.eps12;
  if (a <= 1e-15) {
    // No overhearing for this user: plain geometric deliveries.
    out.delta1 = v.mu_i * (1.0 - v.eps12);
    out.beta1 = 0.0;
    return out;
  }
  const double denom = -v.mu_i * a + v.mu3 * (1.0 - v.eps_i);
  if (std::abs(denom) < 1e-12) {
    throw std::domain_error(
        "interdelivery_params: degenerate denominator (x1 = y1)");
  }
  out.delta1 =
      v.mu_i * (1.0 - v.eps12) +
      v.mu_i * v.mu_i * a * (1.0 - v.eps12) / denom;
  out.beta1 = -v.mu_i * a * (1.0 - v.eps_i) * (v.mu_i + v.mu3) / denom;
  return out;
}

double inter_delivery_pmf(const InterDeliveryParams& idp, std::int64_t ell) {
  if (ell < 1) throw std::invalid_argument("inter_delivery_pmf: ell >= 1");
  const double e = static_cast<double>(ell - 1);
  const double v =
      idp.delta1 * std::pow(idp.x1, e) + idp.beta1 * std::pow(idp.y1, e);
  return std::clamp(v, 0.0, 1.0);
}

Moments inter_delivery_moments(const InterDeliveryParams& idp) {
  if (idp.x1 >= 1.0 || idp.y1 >= 1.0) {
    throw std::domain_error("inter_delivery_moments: user is never served");
  }
  const double ix = 1.0 - idp.x1, iy = 1.0 - idp.y1;
  Moments m;
  m.mean = idp.delta1 / (ix * ix) + idp.beta1 / (iy * iy);
  m.second_moment = idp.delta1 * (1.0 + idp.x1) / (ix * ix * ix) +
                    idp.beta1 * (1.0 + idp.y1) / (iy * iy * iy);
  return m;
}

double delivery_probability(const ActionWeights& mu,
                            const ChannelParams& params, int user) {
  const UserView v = view(mu, params, user);
  const double omz = one_minus_z(v);
  if (omz <= 0.0) throw std::domain_error("user is never served");
  return v.mu_i * (1.0 - v.eps_i) * (v.mu_i + v.mu3) * (1.0 - v.eps12) / omz;
}

double delivery_age_pmf(const ActionWeights& mu, const ChannelParams& params,
                        std::int64_t d, int user) {
  if (d < 1) throw std::invalid_argument("delivery_age_pmf: d >= 1");
  const UserView v = view(mu, params, user);
  const double pd = delivery_probability(mu, params, user);
  if (pd <= 0.0) throw std::domain_error("user is never served");
  if (d == 1) return v.mu_i * (1.0 - v.eps_i) / pd;
  const double z = 1.0 - one_minus_z(v);
  return v.mu_i * v.mu3 * (v.eps_i - v.eps12) * (1.0 - v.eps_i) *
         std::pow(z, static_cast<double>(d - 2)) / pd;
}

double expected_delivery_age(const ActionWeights& mu,
                             const ChannelParams& params, int user) {
  const UserView v = view(mu, params, user);
  const double omz = one_minus_z(v);
  if (v.mu_i + v.mu3 <= 0.0 || omz <= 0.0) {
    throw std::domain_error("user is never served");
  }
  return 1.0 + v.mu3 * (v.eps_i - v.eps12) /
                   ((v.mu_i + v.mu3) * (1.0 - v.eps12) * omz);
}

double randomized_ewsaoi(const AgeWeights& alphas, const ActionWeights& mu,
                         const ChannelParams& params) {
  if (mu.mu1 <= 0.0 || mu.mu2 <= 0.0) {
    throw std::domain_error("randomized_ewsaoi: a user is never scheduled");
  }
  return 0.5 * (alphas.alpha1 * randomized_user_term(view(mu, params, 1)) +
                alphas.alpha2 * randomized_user_term(view(mu, params, 2)));
}

double randomized_ewsaoi_assembled(const AgeWeights& alphas,
                                   const ActionWeights& mu,
                                   const ChannelParams& params) {
  if (mu.mu1 <= 0.0 || mu.mu2 <= 0.0) {
    throw std::domain_error("randomized_ewsaoi: a user is never scheduled");
  }
  double total = 0.0;
  const double alpha[2] = {alphas.alpha1, alphas.alpha2};
  for (int user = 1; user <= 2; ++user) {
    const InterDeliveryParams idp = interdelivery_params(mu, params, user);
    const Moments m = inter_delivery_moments(idp);
    const double ed = expected_delivery_age(mu, params, user);
    total += 0.5 * alpha[user - 1] *
             (m.second_moment / (2.0 * m.mean) + ed - 0.5);
  }
  return total;
}

double symmetric_ewsaoi(double alpha, double mu, double eps, double eps12) {
  if (!(mu > 0.0) || mu > 0.5 + 1e-12) {
    throw std::invalid_argument("symmetric_ewsaoi: mu in (0, 1/2]");
  }
  if (!(eps12 >= 0.0) || eps12 > eps || eps >= 1.0) {
    throw std::invalid_argument("symmetric_ewsaoi: need 0 <= eps12 <= eps < 1");
  }
  mu = std::min(mu, 0.5);
  const double a = eps - eps12;
  const double s = 1.0 - eps;
  if (a < 1e-12) return alpha / (mu * s);

  const double c = 1.0 - eps12;
  const double mu3 = 1.0 - 2.0 * mu;
  const double t1_num = s * s * s * mu3 * (1.0 - mu) * (1.0 - mu) -
                        c * c * a * mu * mu * mu;
  const double inner_a = mu3 * s * s * (1.0 - mu);
  const double inner_b = mu * mu * c * a;
  const double t1_den = (inner_a - inner_b) * mu * s;
  if (std::abs(inner_a - inner_b) < 1e-9 * (inner_a + inner_b)) {
    // Confluent line; fall back to the general form's limit handling.
    const ActionWeights w{mu, mu, mu3};
    const ChannelParams ch = ChannelParams::validated(eps, eps, eps12);
    return randomized_ewsaoi(AgeWeights{0.5, 0.5}, w, ch) * 2.0 * alpha;
  }
  const double t2 = mu3 * a / ((2.0 * eps - 1.0 - eps12) * mu + s);
  return alpha / (c * (1.0 - mu)) * (t1_num / t1_den + t2);
}

double optimal_mu_symmetric(double eps, double eps12) {
  if (!(eps12 >= 0.0) || eps12 > eps || eps >= 1.0) {
    throw std::invalid_argument(
        "optimal_mu_symmetric: need 0 <= eps12 <= eps < 1");
  }
  if (eps12 - 2.0 * eps + 1.0 < 0.0) {
    const double rs = std::sqrt(1.0 - eps);
    return rs / (rs + std::sqrt(eps - eps12));
  }
  return 0.5;
}

bool coding_beneficial(double eps, double eps12) {
  if (!(eps12 >= 0.0) || eps12 > eps || eps >= 1.0) {
    throw std::invalid_argument(
        "coding_beneficial: need 0 <= eps12 <= eps < 1");
  }
  return eps12 - 2.0 * eps + 1.0 < 0.0;
}

OptimizeResult optimize_randomized(const AgeWeights& alphas,
                                   const ChannelParams& params,
                                   double tolerance, bool coded) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("optimize_randomized: tolerance > 0");
  }
  auto objective = [&](const ActionWeights& mu) {
    return randomized_ewsaoi(alphas, mu, params);
  };
  const OptimizeResult edge =
      minimize_simplex(objective, /*coded=*/false, tolerance);
  if (!coded) return edge;
  // The mu3 = 0 edge is part of the simplex and hosts the optimum whenever
  // coding does not pay; the dedicated 1-D search resolves it more sharply
  // than the 2-D refinement, so keep the better of the two.
  const OptimizeResult interior =
      minimize_simplex(objective, /*coded=*/true, tolerance);
  return interior.value <= edge.value ? interior : edge;
}

double empty_queue_prob(double arrival_rate, double departure_rate) {
  if (!(arrival_rate >= 0.0) || arrival_rate > 1.0 ||
      !(departure_rate >= 0.0) || departure_rate > 1.0) {
    throw std::invalid_argument("empty_queue_prob: rates in [0, 1]");
  }
  if (arrival_rate == 0.0 && departure_rate == 0.0) {
    throw std::domain_error("empty_queue_prob: reducible chain");
  }
  return departure_rate * (1.0 - arrival_rate) /
         (departure_rate + arrival_rate - departure_rate * arrival_rate);
}

double q2_nonempty_prob(const ActionWeights& mu, double eps_i, double eps12,
                        int user) {
  const double lam = mu.mu(user) * (eps_i - eps12);
  const double dep = mu.mu3 * (1.0 - eps_i);
  if (lam <= 0.0 && dep <= 0.0) {
    throw std::domain_error("q2_nonempty_prob: reducible chain");
  }
  if (lam <= 0.0) return 0.0;
  if (dep <= 0.0) return 1.0;
  return lam / (dep + lam - dep * lam);
}

MwBoundTerms mw_bound_terms(const ActionWeights& mu,
                            const ChannelParams& params, int user) {
  const UserView v = view(mu, params, user);
  const double s = v.mu_i * (1.0 - v.eps_i);
  if (s <= 0.0) throw std::domain_error("mw_bound_terms: user never served");
  const double lam = v.mu_i * (v.eps_i - v.eps12);
  const double dep = v.mu3 * (1.0 - v.eps_i);
  double pne;
  if (lam <= 0.0) {
    pne = 0.0;
  } else if (dep <= 0.0) {
    pne = 1.0;
  } else {
    pne = lam / (dep + lam - dep * lam);
  }
  const double served_coded = v.mu3 * pne * (1.0 - v.eps_i);
  MwBoundTerms t;
  t.p_ne = pne;
  t.phi = (1.0 - served_coded - s) / s;
  const double r = 1.0 - s - served_coded;
  t.psi = 1.0 - served_coded + r * r / s;
  return t;
}

double mw_upper_bound(const AgeWeights& alphas, const ActionWeights& mu,
                      const ChannelParams& params) {
  const double alpha[2] = {alphas.alpha1, alphas.alpha2};
  double inv = 0.0, psi = 0.0, phi = 0.0;
  for (int user = 1; user <= 2; ++user) {
    const double s = mu.mu(user) * (1.0 - params.eps(user));
    if (s <= 0.0) throw std::domain_error("mw_upper_bound: user never served");
    const MwBoundTerms t = mw_bound_terms(mu, params, user);
    inv += alpha[user - 1] / s;
    psi += alpha[user - 1] * t.psi;
    phi += alpha[user - 1] * t.phi;
  }
  return std::sqrt(0.5 * inv * psi) + 0.5 * phi;
}

OptimizeResult minimize_mw_upper_bound(const AgeWeights& alphas,
                                       const ChannelParams& params,
                                       double tolerance) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("minimize_mw_upper_bound: tolerance > 0");
  }
  return minimize_simplex(
      [&](const ActionWeights& mu) {
        return mw_upper_bound(alphas, mu, params);
      },
      /*coded=*/true, tolerance);
}

double one_slot_drift(const AoiState& state, Action action,
                      const AgeWeights& alphas, const ChannelParams& params) {
  const double h[2] = {static_cast<double>(state.h1),
                       static_cast<double>(state.h2)};
  const double w[2] = {static_cast<double>(state.w1),
                       static_cast<double>(state.w2)};
  const double alpha[2] = {alphas.alpha1, alphas.alpha2};
  double theta = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double succ = 1.0 - params.eps(i + 1);
    const double ed =
        (action != Action::kXor && user_of(action) == i + 1) ? succ : 0.0;
    const double et = (action == Action::kXor && w[i] > 0.0) ? succ : 0.0;
    theta += 0.5 * alpha[i] *
             (et * (w[i] * w[i] + 2.0 * w[i] - h[i] * h[i] - 2.0 * h[i]) -
              ed * (h[i] * h[i] + 2.0 * h[i]) + 2.0 * h[i] + 1.0);
  }
  return theta;
}

}  // namespace agecast
