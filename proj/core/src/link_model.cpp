#include "coopsim/link_model.hpp"

#include <cmath>
#include <string>

namespace coopsim {

double bits_per_slot(const NetworkParams& params, const Link& link) {
  if (params.c0_is_asymptotic && link.rho_capacity >= 1.0) {
    throw AsymptoticCapacityError(
        "link " + std::to_string(link.id.value) +
        ": rho_capacity = 1 is unreachable when c0 is an asymptotic limit");
  }
  return params.b0() * link.rho_capacity * (1.0 - link.rho_delay);
}

LinkClass classify_link(const Link& link) {
  if (link.rho_delay == 1.0) return LinkClass::Useless;
  if (link.rho_delay == 0.0) return LinkClass::NearImpossible;
  return LinkClass::Usable;
}

std::uint64_t slots_required(double per_slot, const TransferRequest& request) {
  if (!(per_slot > 0.0)) {
    throw UnusableLinkError("per-slot payload is zero; exclude the link from planning");
  }
  if (request.payload_bits < 1) {
    throw ParameterOutOfRangeError("payload_bits", "must be >= 1");
  }
  const double payload = static_cast<double>(request.payload_bits);
  double estimate = std::ceil(payload / per_slot);
  if (estimate < 1.0) estimate = 1.0;
  auto slots = static_cast<std::uint64_t>(estimate);
  // std::ceil of the ratio can land one off when the division rounds across
  // an integer; settle on the smallest t with t * per_slot >= payload.
  while (slots > 1 && static_cast<double>(slots - 1) * per_slot >= payload) --slots;
  while (static_cast<double>(slots) * per_slot < payload) ++slots;
  return slots;
}

}  // namespace coopsim
