#include "coopsim/demand.hpp"

namespace coopsim {

namespace {

// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DemandModel DemandModel::constant(std::uint64_t bits) {
  if (bits < 1) throw ParameterOutOfRangeError("bits", "must be >= 1");
  return DemandModel(Kind::Constant, bits, bits, 0.0);
}

DemandModel DemandModel::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 1) throw ParameterOutOfRangeError("lo", "must be >= 1");
  if (hi < lo) throw ParameterOutOfRangeError("hi", "must be >= lo");
  return DemandModel(Kind::Uniform, lo, hi, 0.0);
}

DemandModel DemandModel::two_point(std::uint64_t a, std::uint64_t b, double p) {
  if (a < 1) throw ParameterOutOfRangeError("a", "must be >= 1");
  if (b < 1) throw ParameterOutOfRangeError("b", "must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterOutOfRangeError("p", "must be in [0, 1]");
  return DemandModel(Kind::TwoPoint, a, b, p);
}

std::uint64_t DemandModel::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::Uniform: {
      const std::uint64_t span = b_ - a_ + 1;
      return a_ + rng() % span;
    }
    case Kind::TwoPoint:
      return unit_real(rng) < p_ ? a_ : b_;
  }
  return a_;
}

}  // namespace coopsim
