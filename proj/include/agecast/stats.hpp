#pragma once

#include <span>

namespace agecast {

// I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

// Two-sided Student-t quantile: P(T <= t) = p for df degrees of freedom.
double student_t_quantile(double p, int df);

struct MeanCi {
  double mean = 0;
  double std_error = 0;
  double halfwidth = 0;  // Student-t, at the requested confidence
};

MeanCi mean_ci(std::span<const double> samples, double confidence = 0.95);

}  // namespace agecast
