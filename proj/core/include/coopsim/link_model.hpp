#pragma once

#include <cstdint>

#include "coopsim/errors.hpp"
#include "coopsim/topology.hpp"

namespace coopsim {

// Network-wide constants shared by every link: c0 is the maximum capacity in
// bits per time unit, tau0 the slot length in time units. b0() is the
// payload an ideal link moves in one slot.
struct NetworkParams {
  double c0 = 0.0;
  double tau0 = 0.0;
  bool c0_is_asymptotic = false;

  double b0() const noexcept { return c0 * tau0; }
};

// rho_delay = 1 leaves no usable slot time; rho_delay = 0 claims zero
// propagation delay, which no physical link achieves.
enum class LinkClass { Usable, Useless, NearImpossible };

struct TransferRequest {
  std::uint64_t payload_bits = 1;
};

// Effective payload bits a link carries per slot:
//   b0 * rho_capacity * (1 - rho_delay).
// Throws AsymptoticCapacityError when params.c0_is_asymptotic and the link
// claims the full capacity (rho_capacity = 1).
double bits_per_slot(const NetworkParams& params, const Link& link);

LinkClass classify_link(const Link& link);

// Number of whole slots needed to move request.payload_bits at per_slot bits
// each: the smallest t with t * per_slot >= payload_bits. Throws
// UnusableLinkError when per_slot is not positive.
std::uint64_t slots_required(double per_slot, const TransferRequest& request);

}  // namespace coopsim
