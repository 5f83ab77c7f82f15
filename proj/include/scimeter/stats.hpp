#pragma once

// Statistical kernels: Pearson correlation with a two-sided Student-t
// p-value, ordinary least squares, and linearly interpolated percentiles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scimeter/corpus.hpp"
#include "scimeter/detail/accum.hpp"

namespace scimeter {

class ZeroVarianceError : public Error {
 public:
  ZeroVarianceError() : Error("x values have zero variance") {}
};

struct PairedSample {
  std::vector<double> xs;
  std::vector<double> ys;

  PairedSample(std::vector<double> x, std::vector<double> y)
      : xs(std::move(x)), ys(std::move(y)) {
    if (xs.size() != ys.size()) throw Error("paired sample: length mismatch");
    if (xs.size() < 2) throw Error("paired sample: need at least 2 points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
        throw Error("paired sample: non-finite value at index " +
                    std::to_string(i));
      }
    }
  }

  std::size_t size() const { return xs.size(); }
};

namespace detail {

struct CenteredMoments {
  double mean_x = 0, mean_y = 0, sxx = 0, syy = 0, sxy = 0;
};

inline CenteredMoments centered_moments(const PairedSample& s) {
  const auto n = static_cast<double>(s.size());
  CompensatedSum sx, sy;
  for (double v : s.xs) sx.add(v);
  for (double v : s.ys) sy.add(v);
  CenteredMoments m;
  m.mean_x = sx.value() / n;
  m.mean_y = sy.value() / n;
  CompensatedSum sxx, syy, sxy;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double dx = s.xs[i] - m.mean_x;
    const double dy = s.ys[i] - m.mean_y;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  m.sxx = sxx.value();
  m.syy = syy.value();
  m.sxy = sxy.value();
  return m;
}

// Regularized incomplete beta via the Lentz continued fraction.
inline double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_cf(a, b, x) / a;
  }
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Product-moment correlation; undefined when either variance is zero.
inline std::optional<double> pearson(const PairedSample& sample) {
  const auto m = detail::centered_moments(sample);
  if (m.sxx == 0.0 || m.syy == 0.0) return std::nullopt;
  const double r = m.sxy / std::sqrt(m.sxx * m.syy);
  return std::clamp(r, -1.0, 1.0);
}

/// Two-sided p-value of r under the null, from t = r*sqrt((n-2)/(1-r^2))
/// against Student's t with n-2 degrees of freedom:
/// p = I_{df/(df+t^2)}(df/2, 1/2).
inline double pearson_pvalue(double r, std::int64_t n) {
  if (n < 3) throw Error("pearson_pvalue: need n >= 3");
  r = std::clamp(r, -1.0, 1.0);
  if (std::abs(r) >= 1.0) return 0.0;
  if (r == 0.0) return 1.0;
  const double df = static_cast<double>(n - 2);
  const double t2 = r * r * df / (1.0 - r * r);
  return detail::incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope*x + intercept.
inline LinearFit linfit(const PairedSample& sample) {
  const auto m = detail::centered_moments(sample);
  if (m.sxx == 0.0) throw ZeroVarianceError();
  LinearFit fit;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;
  return fit;
}

/// Percentile by linear interpolation between closest ranks on the sorted
/// list, rank position h = (n-1)*p/100.
inline double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw Error("percentile: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  p = std::clamp(p, 0.0, 100.0);
  const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace scimeter
