#pragma once

// Programmatic scenario fixtures shared by engine, metrics and acceptance
// tests. Link rates: c0 = 1000 bits/unit, tau0 = 1, rho_capacity = 0.5,
// rho_delay = 0.2, so every peer link moves 400 bits per slot.

#include <cstdint>
#include <vector>

#include "coopsim/sim_engine.hpp"

namespace fixtures {

inline coopsim::Scenario peer_star(std::size_t peers) {
  coopsim::Scenario s;
  const coopsim::VertexId hub = s.graph.add_device(coopsim::DeviceKind::Phone);
  for (std::size_t i = 0; i < peers; ++i) {
    const coopsim::VertexId peer = s.graph.add_device(coopsim::DeviceKind::Phone);
    s.graph.add_link(hub, peer, coopsim::LinkKind::WifiLink, 0.5, 0.2);
  }
  s.initiator = hub;
  s.params = coopsim::NetworkParams{1000.0, 1.0, false};
  s.task = coopsim::TaskSpec{40.0, 2.0, 2.0, 5.0, 700};
  s.local_tp = 20.0;
  s.energy = coopsim::EnergyModel::identity();
  s.rounds = 10;
  s.warmup = 3;
  s.seed = 1;
  return s;
}

// Per-link constant demands with slot counts {2, 2, 2, 8}: realized
// transfers always equal the trained means, the pooled skewness is
// structurally positive (and stays positive after losing one cheap peer),
// and every post-warmup round splits with n = 2 (energy-capped).
inline coopsim::Scenario deterministic_scenario(std::uint64_t rounds = 10,
                                                std::uint64_t seed = 1) {
  coopsim::Scenario s = peer_star(4);
  s.demand.emplace(coopsim::LinkId{0}, coopsim::DemandModel::constant(700));   // 2 slots
  s.demand.emplace(coopsim::LinkId{1}, coopsim::DemandModel::constant(700));   // 2 slots
  s.demand.emplace(coopsim::LinkId{2}, coopsim::DemandModel::constant(700));   // 2 slots
  s.demand.emplace(coopsim::LinkId{3}, coopsim::DemandModel::constant(3000));  // 8 slots
  s.rounds = rounds;
  s.seed = seed;
  return s;
}

// Symmetric two-point payloads inside one slot bracket: every draw costs
// exactly 2 slots, the pooled slot distribution is degenerate, and the
// skewness gate can never produce positive evidence.
inline coopsim::Scenario symmetric_scenario(std::uint64_t rounds = 20,
                                            std::uint64_t seed = 1) {
  coopsim::Scenario s = peer_star(3);
  for (std::uint32_t l = 0; l < 3; ++l) {
    s.demand.emplace(coopsim::LinkId{l}, coopsim::DemandModel::two_point(500, 700, 0.5));
  }
  s.rounds = rounds;
  s.seed = seed;
  return s;
}

// Stochastic demand with positive slot-count skew: 2 slots with p = 0.8,
// 8 slots otherwise, on every peer link.
inline coopsim::Scenario skewed_scenario(std::uint64_t rounds = 50, std::uint64_t seed = 7,
                                         std::size_t peers = 4) {
  coopsim::Scenario s = peer_star(peers);
  for (std::uint32_t l = 0; l < peers; ++l) {
    s.demand.emplace(coopsim::LinkId{l}, coopsim::DemandModel::two_point(700, 3000, 0.8));
  }
  s.task = coopsim::TaskSpec{60.0, 2.0, 2.0, 5.0, 1500};
  s.local_tp = 50.0;
  s.rounds = rounds;
  s.seed = seed;
  return s;
}

}  // namespace fixtures
