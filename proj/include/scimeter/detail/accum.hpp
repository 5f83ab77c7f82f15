#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

namespace scimeter::detail {

// 128-bit accumulator type for exact fractional-mass bookkeeping.
using uint128 = unsigned __int128;

// lcm(1..27): common denominator for 1/k fractions with k up to the
// number of disciplines. Fits comfortably in 64 bits (~8.0e10).
inline constexpr std::uint64_t discipline_lcm() {
  std::uint64_t l = 1;
  for (std::uint64_t k = 2; k <= 27; ++k) l = std::lcm(l, k);
  return l;
}
inline constexpr std::uint64_t kMassDenominator = discipline_lcm();
static_assert(kMassDenominator == 80313433200ULL);

// Neumaier-compensated running sum. Deterministic for a fixed order of
// addends; exact for dyadic inputs within double range.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace scimeter::detail
