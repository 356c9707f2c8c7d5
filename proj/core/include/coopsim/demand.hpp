#pragma once

#include <cstdint>
#include <random>

#include "coopsim/errors.hpp"

namespace coopsim {

// Per-link distribution of payload bits per round. Sampling is hand-rolled
// on top of the raw mt19937_64 stream so traces stay bit-reproducible
// independent of standard-library distribution internals. A Constant model
// consumes no random numbers.
class DemandModel {
 public:
  enum class Kind { Constant, Uniform, TwoPoint };

  static DemandModel constant(std::uint64_t bits);
  // Integer payload drawn uniformly from [lo, hi].
  static DemandModel uniform(std::uint64_t lo, std::uint64_t hi);
  // Payload a with probability p, b otherwise.
  static DemandModel two_point(std::uint64_t a, std::uint64_t b, double p);

  std::uint64_t sample(std::mt19937_64& rng) const;

  Kind kind() const noexcept { return kind_; }
  std::uint64_t a() const noexcept { return a_; }
  std::uint64_t b() const noexcept { return b_; }
  double p() const noexcept { return p_; }

 private:
  DemandModel(Kind kind, std::uint64_t a, std::uint64_t b, double p)
      : kind_(kind), a_(a), b_(b), p_(p) {}

  Kind kind_ = Kind::Constant;
  std::uint64_t a_ = 1;  // constant bits / uniform lo / two-point a
  std::uint64_t b_ = 1;  // uniform hi / two-point b
  double p_ = 0.5;
};

}  // namespace coopsim
