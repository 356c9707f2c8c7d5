#include "coopsim/moments.hpp"

#include <cmath>

namespace coopsim {

void SlotEstimator::observe(double sample) {
  const double n_prev = static_cast<double>(count_);
  ++count_;
  const double n = static_cast<double>(count_);
  const double delta = sample - mean_;
  const double delta_n = delta / n;
  const double term = delta * delta_n * n_prev;
  m3_ += term * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term;
  mean_ += delta_n;
}

double SlotEstimator::mean() const {
  if (count_ < 1) throw InsufficientSamplesError(1, "mean needs at least 1 sample");
  return mean_;
}

double SlotEstimator::variance() const {
  if (count_ < 2) throw InsufficientSamplesError(2, "variance needs at least 2 samples");
  return m2_ / static_cast<double>(count_);
}

double SlotEstimator::skewness() const {
  if (count_ < 3) throw InsufficientSamplesError(3, "skewness needs at least 3 samples");
  const double var = m2_ / static_cast<double>(count_);
  if (var <= 0.0) {
    throw DegenerateDistributionError("skewness undefined: sample variance is zero");
  }
  const double third = m3_ / static_cast<double>(count_);
  return third / std::pow(var, 1.5);
}

bool SlotEstimator::skewness_defined() const noexcept {
  return count_ >= 3 && m2_ > 0.0;
}

SlotEstimator SlotEstimator::merge(const SlotEstimator& a, const SlotEstimator& b) {
  if (a.count_ == 0) return b;
  if (b.count_ == 0) return a;

  const double na = static_cast<double>(a.count_);
  const double nb = static_cast<double>(b.count_);
  const double n = na + nb;
  const double delta = b.mean_ - a.mean_;

  SlotEstimator out;
  out.count_ = a.count_ + b.count_;
  out.mean_ = a.mean_ + delta * nb / n;
  out.m2_ = a.m2_ + b.m2_ + delta * delta * na * nb / n;
  out.m3_ = a.m3_ + b.m3_ + delta * delta * delta * na * nb * (na - nb) / (n * n) +
            3.0 * delta * (na * b.m2_ - nb * a.m2_) / n;
  return out;
}

}  // namespace coopsim
