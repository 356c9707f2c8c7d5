#include "coopsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace coopsim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Plan unevaluated_plan(double tc_estimate) {
  Plan plan;
  plan.tc_estimate = tc_estimate;
  plan.gates = {GateRecord{"skewness", kNan, false}, GateRecord{"time", kNan, false},
                GateRecord{"energy", kNan, false}};
  return plan;
}

}  // namespace

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::Scatter:
      return "scatter";
    case Phase::Compute:
      return "compute";
    case Phase::Gather:
      return "gather";
  }
  return "unknown";
}

double split_round_energy(const EnergyModel& f, const TaskSpec& task, int n, double tc) {
  const double parts = static_cast<double>(n) + 1.0;
  return parts * f.evaluate(task.tp) + f.evaluate(task.ta) + f.evaluate(task.ts) +
         2.0 * parts * f.evaluate(tc);
}

double local_round_energy(const EnergyModel& f, const TaskSpec& task, double local_tp) {
  return f.evaluate(task.ta) + f.evaluate(local_tp) + f.evaluate(task.ts);
}

SimEngine::SimEngine(Scenario scenario)
    : scenario_(std::move(scenario)), rng_(scenario_.seed) {
  // Links without an explicit demand model carry the nominal task payload.
  for (const Link& link : scenario_.graph.links()) {
    if (!scenario_.demand.contains(link.id)) {
      scenario_.demand.emplace(link.id,
                               DemandModel::constant(scenario_.task.payload_bits_per_neighbor));
    }
  }
  validate();
}

void SimEngine::validate() const {
  std::string problems;
  const auto add = [&problems](const std::string& p) {
    if (!problems.empty()) problems += "; ";
    problems += p;
  };

  if (scenario_.rounds < 1) add("rounds: must be >= 1");
  if (!(scenario_.params.c0 > 0.0)) add("network.c0: must be > 0");
  if (!(scenario_.params.tau0 > 0.0)) add("network.tau0: must be > 0");
  if (!(scenario_.task.t0 > 0.0)) add("task.t0: must be > 0");
  if (!(scenario_.task.ta > 0.0)) add("task.ta: must be > 0");
  if (!(scenario_.task.ts > 0.0)) add("task.ts: must be > 0");
  if (!(scenario_.task.tp > 0.0)) add("task.tp: must be > 0");
  if (scenario_.task.payload_bits_per_neighbor < 1) {
    add("task.payload_bits_per_neighbor: must be >= 1");
  }
  if (!(scenario_.local_tp > 0.0)) add("task.local_tp: must be > 0");

  if (scenario_.initiator.value >= scenario_.graph.vertex_count()) {
    add("initiator: vertex " + std::to_string(scenario_.initiator.value) + " does not exist");
  } else if (scenario_.graph.vertex(scenario_.initiator).kind != DeviceKind::Phone) {
    add("initiator: must be a phone");
  }

  for (std::size_t i = 0; i < scenario_.churn.size(); ++i) {
    const ChurnEvent& e = scenario_.churn[i];
    if (e.round < 1) add("churn[" + std::to_string(i) + "].round: must be >= 1");
    if (e.vertex.value >= scenario_.graph.vertex_count()) {
      add("churn[" + std::to_string(i) + "].device: vertex " +
          std::to_string(e.vertex.value) + " does not exist");
    }
  }

  if (scenario_.params.c0_is_asymptotic) {
    for (const Link& link : scenario_.graph.links()) {
      if (link.rho_capacity >= 1.0) {
        add("links[" + std::to_string(link.id.value) +
            "].rho_capacity: must be < 1 when c0 is asymptotic");
      }
    }
  }

  if (!problems.empty()) throw InvalidScenarioError(problems);
}

void SimEngine::inject_churn(VertexId vertex, bool alive, ChurnPhase phase) {
  scenario_.graph.vertex(vertex);  // existence check
  if (phase == ChurnPhase::RoundStart) {
    scenario_.graph.set_alive(vertex, alive);
  } else {
    injected_mid_.push_back(ChurnEvent{0, vertex, alive, ChurnPhase::MidRound});
  }
}

void SimEngine::apply_churn(std::uint64_t round, ChurnPhase phase) {
  for (const ChurnEvent& e : scenario_.churn) {
    if (e.round == round && e.phase == phase) {
      scenario_.graph.set_alive(e.vertex, e.alive);
    }
  }
  if (phase == ChurnPhase::MidRound && !injected_mid_.empty()) {
    for (const ChurnEvent& e : injected_mid_) {
      scenario_.graph.set_alive(e.vertex, e.alive);
    }
    injected_mid_.clear();
  }
}

bool SimEngine::link_usable(const Link& link) const {
  return scenario_.graph.is_alive(link.a) && scenario_.graph.is_alive(link.b) &&
         classify_link(link) != LinkClass::Useless;
}

std::vector<CohortMember> SimEngine::candidate_peers() const {
  std::vector<CohortMember> out;
  for (const Neighbor& n : scenario_.graph.neighbors(scenario_.initiator)) {
    if (scenario_.graph.vertex(n.vertex).kind == DeviceKind::Phone) {
      out.push_back(CohortMember{n.vertex, n.link});
    }
  }
  return out;
}

RoundOutcome SimEngine::step() {
  if (done()) throw ExhaustedError("scenario exhausted after round " +
                                   std::to_string(scenario_.rounds));
  const std::uint64_t round = next_round_;

  apply_churn(round, ChurnPhase::RoundStart);

  // Algorithm line 2: one fresh slot-count observation per usable link.
  for (const Link& link : scenario_.graph.links()) {
    if (!link_usable(link)) continue;
    const double per_slot = bits_per_slot(scenario_.params, link);
    const std::uint64_t bits = scenario_.demand.at(link.id).sample(rng_);
    const std::uint64_t slots = slots_required(per_slot, TransferRequest{bits});
    estimators_[link.id].observe(static_cast<double>(slots));
  }

  const std::vector<CohortMember> candidates = candidate_peers();

  // Pool the usable candidate links for the per-round snapshot.
  SlotEstimator pooled;
  std::vector<LinkId> usable_links;
  for (const CohortMember& c : candidates) {
    if (classify_link(scenario_.graph.link(c.link)) == LinkClass::Useless) continue;
    usable_links.push_back(c.link);
    auto it = estimators_.find(c.link);
    if (it != estimators_.end()) pooled = SlotEstimator::merge(pooled, it->second);
  }
  last_snapshot_ = EstimatorSnapshot{};
  if (pooled.count() >= 1) last_snapshot_.mean = pooled.mean();
  if (pooled.count() >= 2) last_snapshot_.variance = pooled.variance();
  if (pooled.skewness_defined()) last_snapshot_.skewness = pooled.skewness();

  Plan plan;
  if (round <= scenario_.warmup) {
    double tc = kNan;
    if (!usable_links.empty()) {
      tc = estimate_tc(estimators_, usable_links, scenario_.params.tau0);
    }
    plan = unevaluated_plan(tc);
  } else {
    plan = split_decision(scenario_.task, scenario_.graph, estimators_, candidates,
                          scenario_.energy, scenario_.params.tau0);
  }

  RoundOutcome outcome;
  outcome.round = round;
  outcome.tc_realized_mean = kNan;

  if (plan.split()) {
    const int n = plan.n();
    std::vector<std::uint64_t> scatter_slots(plan.cohort.size());
    std::vector<std::uint64_t> gather_slots(plan.cohort.size());

    for (std::size_t i = 0; i < plan.cohort.size(); ++i) {
      const Link& link = scenario_.graph.link(plan.cohort[i].link);
      const std::uint64_t bits = scenario_.demand.at(link.id).sample(rng_);
      scatter_slots[i] = slots_required(bits_per_slot(scenario_.params, link),
                                        TransferRequest{bits});
    }

    apply_churn(round, ChurnPhase::MidRound);
    for (const CohortMember& member : plan.cohort) {
      if (!scenario_.graph.is_alive(member.vertex)) {
        outcome.failures.push_back(PhaseFailure{member.vertex, Phase::Compute});
      }
    }

    // Gather legs are drawn even for lost peers: the transfers were already
    // in flight, and the random stream must not depend on churn.
    for (std::size_t i = 0; i < plan.cohort.size(); ++i) {
      const Link& link = scenario_.graph.link(plan.cohort[i].link);
      const std::uint64_t bits = scenario_.demand.at(link.id).sample(rng_);
      gather_slots[i] = slots_required(bits_per_slot(scenario_.params, link),
                                       TransferRequest{bits});
    }

    std::uint64_t slot_sum = 0;
    std::uint64_t slot_max = 0;
    for (std::size_t i = 0; i < plan.cohort.size(); ++i) {
      const std::uint64_t roundtrip = scatter_slots[i] + gather_slots[i];
      slot_sum += roundtrip;
      slot_max = std::max(slot_max, roundtrip);
    }
    const double tau0 = scenario_.params.tau0;
    const double tc_realized = tau0 * static_cast<double>(slot_sum) /
                               (2.0 * static_cast<double>(n));
    outcome.tc_realized_mean = tc_realized;

    // Admission used the mean; the slowest peer governs the clock.
    outcome.elapsed = scenario_.task.ta + scenario_.task.tp + scenario_.task.ts +
                      tau0 * static_cast<double>(slot_max);
    outcome.energy_spent = split_round_energy(scenario_.energy, scenario_.task, n, tc_realized);
    outcome.comm_energy = 2.0 * (static_cast<double>(n) + 1.0) *
                          scenario_.energy.evaluate(tc_realized);

    if (!outcome.failures.empty()) {
      // A lost peer is detected one slot past the deadline.
      outcome.elapsed = std::max(outcome.elapsed, scenario_.task.t0 + tau0);
    }
  } else {
    apply_churn(round, ChurnPhase::MidRound);
    outcome.elapsed = scenario_.task.ta + scenario_.local_tp + scenario_.task.ts;
    outcome.energy_spent = local_round_energy(scenario_.energy, scenario_.task,
                                              scenario_.local_tp);
    outcome.comm_energy = 0.0;
  }

  outcome.deadline_met = outcome.elapsed <= scenario_.task.t0;
  outcome.decision = std::move(plan);

  ++next_round_;
  return outcome;
}

SimTrace run(const Scenario& scenario) {
  SimEngine engine(scenario);
  SimTrace trace;
  trace.outcomes.reserve(scenario.rounds);
  trace.snapshots.reserve(scenario.rounds);
  while (!engine.done()) {
    trace.outcomes.push_back(engine.step());
    trace.snapshots.push_back(engine.last_snapshot());
  }
  return trace;
}

}  // namespace coopsim
