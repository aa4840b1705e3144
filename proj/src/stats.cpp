#include "agecast/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace agecast {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double x, double a, double b) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0) || !(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: bad arguments");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(ln_front) * beta_cf(x, a, b) / a;
  }
  return 1.0 - std::exp(ln_front) * beta_cf(1.0 - x, b, a) / b;
}

double student_t_quantile(double p, int df) {
  if (df < 1) throw std::invalid_argument("student_t_quantile: df >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("student_t_quantile: p in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);

  const double v = static_cast<double>(df);
  auto cdf = [v](double t) {
    const double ib = regularized_incomplete_beta(v / (t * t + v), v / 2.0, 0.5);
    return 1.0 - 0.5 * ib;
  };
  double hi = 1.0;
  while (cdf(hi) < p && hi < 1e12) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

MeanCi mean_ci(std::span<const double> samples, double confidence) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("mean_ci: need at least 2 samples");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("mean_ci: confidence in (0, 1)");
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double s : samples) {
    const double d = s - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(n - 1);
  MeanCi out;
  out.mean = mean;
  out.std_error = std::sqrt(var / static_cast<double>(n));
  const double t =
      student_t_quantile(0.5 + confidence / 2.0, static_cast<int>(n) - 1);
  out.halfwidth = t * out.std_error;
  return out;
}

}  // namespace agecast
