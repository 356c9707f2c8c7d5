#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "coopsim/link_model.hpp"
#include "coopsim/moments.hpp"
#include "coopsim/topology.hpp"

namespace coopsim {

// One divisible computation that must finish every t0 time units: ta to
// split it, tp for the slowest subtask, ts to assemble the answer,
// payload_bits_per_neighbor shipped to each admitted peer.
struct TaskSpec {
  double t0 = 0.0;
  double ta = 0.0;
  double ts = 0.0;
  double tp = 0.0;
  std::uint64_t payload_bits_per_neighbor = 1;
};

// Task-duration-to-energy mapping f, strictly increasing on positive
// durations with f(t) >= 0 for t >= 0.
class EnergyModel {
 public:
  enum class Form { Identity, Linear, Affine, PowerLaw };

  static EnergyModel identity();
  static EnergyModel linear(double coefficient);                 // k * t
  static EnergyModel affine(double coefficient, double offset);  // k * t + c
  static EnergyModel power_law(double coefficient, double exponent);  // k * t^p

  double evaluate(double duration) const;

  Form form() const noexcept { return form_; }
  double coefficient() const noexcept { return coefficient_; }
  double offset() const noexcept { return offset_; }
  double exponent() const noexcept { return exponent_; }

 private:
  EnergyModel(Form form, double coefficient, double offset, double exponent)
      : form_(form), coefficient_(coefficient), offset_(offset), exponent_(exponent) {}

  Form form_ = Form::Identity;
  double coefficient_ = 1.0;
  double offset_ = 0.0;
  double exponent_ = 1.0;
};

struct CohortMember {
  VertexId vertex;
  LinkId link;
  auto operator<=>(const CohortMember&) const = default;
};

enum class PlanAction { RunLocally, Split };

// One admission gate with the numeric value it was judged on. value is NaN
// when the gate was never evaluated (no usable candidates, warm-up round).
struct GateRecord {
  std::string name;
  double value = 0.0;
  bool passed = false;
};

// Outcome of one admission decision, with the full audit trail: the three
// gates in evaluation order (skewness, time, energy) and any candidate
// links dropped as Useless.
struct Plan {
  PlanAction action = PlanAction::RunLocally;
  std::vector<CohortMember> cohort;  // admitted peers, empty unless Split
  double tc_estimate = 0.0;
  std::array<GateRecord, 3> gates{};
  std::vector<LinkId> excluded_links;

  int n() const noexcept { return static_cast<int>(cohort.size()); }
  bool split() const noexcept { return action == PlanAction::Split; }
};

using LinkEstimators = std::map<LinkId, SlotEstimator>;

// Estimated one-way communication time: tau0 times the mean over candidate
// links of their estimated slot counts. Throws InsufficientSamplesError when
// the candidate list is empty or a candidate has no samples (the message
// names the link).
double estimate_tc(const LinkEstimators& estimators, std::span<const LinkId> candidates,
                   double tau0);

// Deadline test: ta + tp + ts + 2*tc <= t0.
bool time_feasible(const TaskSpec& task, double tc);

// Largest cohort size n whose per-round energy fits the budget:
//   (n+1) f(tp) + f(ta) + f(ts) + 2 (n+1) f(tc) <= f(t0).
// Closed form floor((f(t0) - f(ta) - f(ts)) / (f(tp) + 2 f(tc))) - 1, settled
// against the raw inequality so the returned n satisfies it and n+1 does
// not. Returns -1 when no n >= 0 fits.
int max_cohort_size(const TaskSpec& task, const EnergyModel& f, double tc);

// Full admission decision over the candidate peers:
//   gates = [pooled slot-count skewness > 0, time_feasible, max_cohort_size >= 1]
// Split(n) with n = min(max_cohort_size, usable candidates) iff all three
// pass, RunLocally otherwise. Useless-class links are dropped silently and
// recorded; candidates are ranked by ascending estimated slot mean (ties by
// vertex id), parallel links to one peer collapse to that peer's best link.
Plan split_decision(const TaskSpec& task, const DeviceGraph& graph,
                    const LinkEstimators& estimators,
                    std::span<const CohortMember> candidates, const EnergyModel& energy,
                    double tau0);

}  // namespace coopsim
