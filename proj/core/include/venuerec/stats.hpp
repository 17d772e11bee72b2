#pragma once

#include <cstddef>
#include <span>

namespace venuerec {

struct TTestResult {
  double t = 0.0;
  /// Two-tailed.
  double p = 1.0;
  std::size_t n = 0;
  double mean_difference = 0.0;
  bool significant = false;  // p < 0.05
};

/// Paired two-tailed Student t-test on a − b. Zero-variance differences with
/// a nonzero mean give t = ±inf, p = 0; all-zero differences give t = 0,
/// p = 1. Throws ValidationError unless sizes match and n >= 2.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

/// Two-tailed p-value of a t statistic with `dof` degrees of freedom.
double student_t_two_tailed_p(double t, double dof);

}  // namespace venuerec
