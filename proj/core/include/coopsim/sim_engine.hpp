#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "coopsim/demand.hpp"
#include "coopsim/link_model.hpp"
#include "coopsim/planner.hpp"
#include "coopsim/topology.hpp"

namespace coopsim {

enum class ChurnPhase {
  RoundStart,  // applied before the round's estimate update and decision
  MidRound     // applied between scatter and gather of that round
};

struct ChurnEvent {
  std::uint64_t round = 1;  // 1-based
  VertexId vertex;
  bool alive = false;
  ChurnPhase phase = ChurnPhase::RoundStart;
};

// Everything one deterministic run needs. The seed fully determines all
// sampling; links without an explicit demand model fall back to a constant
// demand of task.payload_bits_per_neighbor.
struct Scenario {
  DeviceGraph graph;
  NetworkParams params;
  TaskSpec task;
  EnergyModel energy = EnergyModel::identity();
  std::map<LinkId, DemandModel> demand;
  double local_tp = 0.0;  // serial work replacing the cohort on local rounds
  std::uint64_t rounds = 1;
  std::uint64_t warmup = 3;
  VertexId initiator;
  std::vector<ChurnEvent> churn;
  std::uint64_t seed = 0;
};

enum class Phase { Scatter, Compute, Gather };

const char* phase_name(Phase phase);

struct PhaseFailure {
  VertexId vertex;
  Phase phase = Phase::Compute;
  auto operator<=>(const PhaseFailure&) const = default;
};

struct RoundOutcome {
  std::uint64_t round = 0;  // 1-based
  Plan decision;
  double elapsed = 0.0;
  double energy_spent = 0.0;
  double comm_energy = 0.0;
  // Mean realized one-way transfer time over the cohort, NaN on local rounds.
  double tc_realized_mean = 0.0;
  bool deadline_met = false;
  std::vector<PhaseFailure> failures;
};

// Pooled slot-count estimator state right after the round's update;
// fields are absent while undefined (too few samples / zero variance).
struct EstimatorSnapshot {
  std::optional<double> mean;
  std::optional<double> variance;
  std::optional<double> skewness;
};

struct SimTrace {
  std::vector<RoundOutcome> outcomes;
  std::vector<EstimatorSnapshot> snapshots;
};

// Energy of one cooperative round, the quantity the admission bound caps:
//   (n+1) f(tp) + f(ta) + f(ts) + 2 (n+1) f(tc).
double split_round_energy(const EnergyModel& f, const TaskSpec& task, int n, double tc);

double local_round_energy(const EnergyModel& f, const TaskSpec& task, double local_tp);

// Discrete-time engine for one scenario. Each round: apply start-phase
// churn, sample a slot-count observation for every usable link (ascending
// link id), decide, then either run the scatter/compute/gather/compose
// cycle or fall back to local execution. Strictly sequential; run many
// engines in parallel for sweeps.
class SimEngine {
 public:
  explicit SimEngine(Scenario scenario);  // throws InvalidScenarioError

  bool done() const noexcept { return next_round_ > scenario_.rounds; }

  // Advances exactly one round. Throws ExhaustedError after the final one.
  RoundOutcome step();

  // Flip a vertex's liveness. RoundStart applies immediately (the engine sits
  // between rounds); MidRound is queued for the next round's scatter/gather
  // window. Throws UnknownVertexError.
  void inject_churn(VertexId vertex, bool alive, ChurnPhase phase = ChurnPhase::RoundStart);

  const DeviceGraph& graph() const noexcept { return scenario_.graph; }
  const Scenario& scenario() const noexcept { return scenario_; }
  const LinkEstimators& estimators() const noexcept { return estimators_; }
  const EstimatorSnapshot& last_snapshot() const noexcept { return last_snapshot_; }

 private:
  void validate() const;
  void apply_churn(std::uint64_t round, ChurnPhase phase);
  bool link_usable(const Link& link) const;
  std::vector<CohortMember> candidate_peers() const;

  Scenario scenario_;
  LinkEstimators estimators_;
  std::mt19937_64 rng_;
  std::uint64_t next_round_ = 1;
  std::vector<ChurnEvent> injected_mid_;  // queued MidRound injections
  EstimatorSnapshot last_snapshot_;
};

// Runs the whole scenario: exactly a fold of SimEngine::step.
SimTrace run(const Scenario& scenario);

}  // namespace coopsim
