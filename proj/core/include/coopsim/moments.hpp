#pragma once

#include <cstdint>

#include "coopsim/errors.hpp"

namespace coopsim {

// Streaming estimator of the first three central moments of per-link slot
// counts. Uses the one-pass Welford recurrence extended to third order, so a
// long tightly clustered stream stays accurate. Moments follow the
// population convention (divide by n); swap here if a bias-corrected variant
// is ever needed.
class SlotEstimator {
 public:
  void observe(double sample);

  std::uint64_t count() const noexcept { return count_; }

  // Running central sums: m2 = sum (x - mean)^2, m3 = sum (x - mean)^3.
  double m2() const noexcept { return m2_; }
  double m3() const noexcept { return m3_; }

  // Throws InsufficientSamplesError below the stated minimum count
  // (1 / 2 / 3 respectively). skewness() additionally throws
  // DegenerateDistributionError when the variance is zero.
  double mean() const;       // count >= 1
  double variance() const;   // count >= 2, m2 / n
  double skewness() const;   // count >= 3, (m3/n) / (m2/n)^(3/2)

  // True when skewness() would return a value instead of throwing.
  bool skewness_defined() const noexcept;

  // Equivalent to replaying a's samples then b's into one estimator.
  static SlotEstimator merge(const SlotEstimator& a, const SlotEstimator& b);

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
};

}  // namespace coopsim
