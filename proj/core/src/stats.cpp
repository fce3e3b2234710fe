#include "conceptrealm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "conceptrealm/errors.hpp"

namespace conceptrealm {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DataError("mean of empty range");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
  double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) throw DataError("sample_std needs n >= 2");
  double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

double percentile(std::vector<double> xs, double q) {
  if (xs.empty()) throw DataError("percentile of empty range");
  if (q < 0.0 || q > 1.0) throw DataError("percentile q outside [0,1]");
  std::sort(xs.begin(), xs.end());
  double pos = q * static_cast<double>(xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

double median(std::vector<double> xs) { return percentile(std::move(xs), 0.5); }

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DataError("incomplete beta needs a,b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("paired_t_test: unequal lengths");
  if (a.size() < 2) throw DataError("paired_t_test: needs n >= 2");
  std::size_t n = a.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  double md = mean(d);
  double sd = sample_std(d);
  TTestResult r;
  r.df = static_cast<int>(n) - 1;
  if (sd == 0.0) {
    if (md == 0.0) {
      r.t = 0.0;
      r.p_value = 1.0;
    } else {
      r.t = md > 0.0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      r.degenerate_variance = true;
    }
    return r;
  }
  r.t = md * std::sqrt(static_cast<double>(n)) / sd;
  double df = static_cast<double>(r.df);
  r.p_value = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + r.t * r.t));
  return r;
}

double normalized_top_entropy(std::vector<double> shares, int active_count, int k) {
  if (shares.empty() || active_count < 1) throw DataError("entropy needs at least one share");
  std::sort(shares.begin(), shares.end(), std::greater<>());
  if (static_cast<int>(shares.size()) > k) shares.resize(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double s : shares) {
    if (s < 0.0) throw DataError("entropy shares must be non-negative");
    total += s;
  }
  if (total <= 0.0) throw DataError("entropy shares sum to zero");
  int denom_count = std::min(k, active_count);
  if (denom_count <= 1) return 0.0;
  double h = 0.0;
  for (double s : shares) {
    if (s <= 0.0) continue;  // 0 * ln 0 = 0
    double p = s / total;
    h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(denom_count));
}

}  // namespace conceptrealm
