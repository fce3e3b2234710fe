#pragma once

#include <span>
#include <vector>

namespace conceptrealm {

double mean(std::span<const double> xs);

// Population variance (divide by n). Report columns derived from variances
// use this convention throughout.
double population_variance(std::span<const double> xs);

// Sample standard deviation (divide by n-1); n must be >= 2.
double sample_std(std::span<const double> xs);

// Linear-interpolation percentile between closest ranks (position
// q*(n-1) on the sorted values). q in [0,1].
double percentile(std::vector<double> xs, double q);

double median(std::vector<double> xs);

// Regularized incomplete beta function I_x(a, b) via the standard
// continued-fraction expansion.
double regularized_incomplete_beta(double a, double b, double x);

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p_value = 1.0;
  // sd(a-b) == 0: t is 0 (p=1) when the mean difference is 0, otherwise
  // p is reported as 0 with this flag set.
  bool degenerate_variance = false;
};

// Two-tailed paired t-test over equal-length score lists (n >= 2).
// p = I_{df/(df+t^2)}(df/2, 1/2).
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Shannon entropy of the top-k shares, normalized by ln(min(k, active_count))
// so the result lies in [0,1]. `shares` are the top-k values (any scale,
// re-normalized internally); active_count is how many holders exist at all.
// A single holder yields 0 by convention.
double normalized_top_entropy(std::vector<double> shares, int active_count, int k);

}  // namespace conceptrealm
