#include "coopsim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace coopsim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double candidate_mean(const LinkEstimators& estimators, LinkId link) {
  auto it = estimators.find(link);
  if (it == estimators.end() || it->second.count() < 1) {
    throw InsufficientSamplesError(
        1, "link " + std::to_string(link.value) + " has no slot-count samples");
  }
  return it->second.mean();
}

}  // namespace

EnergyModel EnergyModel::identity() {
  return EnergyModel(Form::Identity, 1.0, 0.0, 1.0);
}

EnergyModel EnergyModel::linear(double coefficient) {
  if (!(coefficient > 0.0)) {
    throw ParameterOutOfRangeError("coefficient", "must be > 0");
  }
  return EnergyModel(Form::Linear, coefficient, 0.0, 1.0);
}

EnergyModel EnergyModel::affine(double coefficient, double offset) {
  if (!(coefficient > 0.0)) {
    throw ParameterOutOfRangeError("coefficient", "must be > 0");
  }
  if (!(offset >= 0.0)) {
    throw ParameterOutOfRangeError("offset", "must be >= 0");
  }
  return EnergyModel(Form::Affine, coefficient, offset, 1.0);
}

EnergyModel EnergyModel::power_law(double coefficient, double exponent) {
  if (!(coefficient > 0.0)) {
    throw ParameterOutOfRangeError("coefficient", "must be > 0");
  }
  if (!(exponent > 0.0)) {
    throw ParameterOutOfRangeError("exponent", "must be > 0");
  }
  return EnergyModel(Form::PowerLaw, coefficient, 0.0, exponent);
}

double EnergyModel::evaluate(double duration) const {
  if (!(duration >= 0.0)) {
    throw ParameterOutOfRangeError("duration", "must be >= 0");
  }
  switch (form_) {
    case Form::Identity:
      return duration;
    case Form::Linear:
      return coefficient_ * duration;
    case Form::Affine:
      return coefficient_ * duration + offset_;
    case Form::PowerLaw:
      return coefficient_ * std::pow(duration, exponent_);
  }
  return duration;
}

double estimate_tc(const LinkEstimators& estimators, std::span<const LinkId> candidates,
                   double tau0) {
  if (candidates.empty()) {
    throw InsufficientSamplesError(1, "no candidate links to estimate from");
  }
  double sum = 0.0;
  for (LinkId link : candidates) sum += candidate_mean(estimators, link);
  return tau0 * (sum / static_cast<double>(candidates.size()));
}

bool time_feasible(const TaskSpec& task, double tc) {
  return task.ta + task.tp + task.ts + 2.0 * tc <= task.t0;
}

int max_cohort_size(const TaskSpec& task, const EnergyModel& f, double tc) {
  const double f_t0 = f.evaluate(task.t0);
  const double f_ta = f.evaluate(task.ta);
  const double f_ts = f.evaluate(task.ts);
  const double f_tp = f.evaluate(task.tp);
  const double f_tc = f.evaluate(tc);

  const double denom = f_tp + 2.0 * f_tc;
  if (!(denom > 0.0)) {
    throw NonPositiveDenominatorError("f(tp) + 2 f(tc) must be positive");
  }

  const auto fits = [&](double n) {
    return (n + 1.0) * f_tp + f_ta + f_ts + 2.0 * (n + 1.0) * f_tc <= f_t0;
  };

  // The closed form only seeds the walk; the raw inequality decides.
  constexpr double kSaturation = 1e9;
  double n = std::floor((f_t0 - f_ta - f_ts) / denom - 1.0);
  if (n < 0.0) n = 0.0;
  if (n > kSaturation) n = kSaturation;
  while (n < kSaturation && fits(n + 1.0)) n += 1.0;
  while (n >= 0.0 && !fits(n)) n -= 1.0;
  return n < 0.0 ? -1 : static_cast<int>(n);
}

Plan split_decision(const TaskSpec& task, const DeviceGraph& graph,
                    const LinkEstimators& estimators,
                    std::span<const CohortMember> candidates, const EnergyModel& energy,
                    double tau0) {
  Plan plan;
  plan.tc_estimate = kNan;
  plan.gates = {GateRecord{"skewness", kNan, false}, GateRecord{"time", kNan, false},
                GateRecord{"energy", kNan, false}};

  std::vector<CohortMember> usable;
  usable.reserve(candidates.size());
  for (const CohortMember& c : candidates) {
    if (classify_link(graph.link(c.link)) == LinkClass::Useless) {
      plan.excluded_links.push_back(c.link);
    } else {
      usable.push_back(c);
    }
  }
  if (usable.empty()) return plan;

  std::sort(usable.begin(), usable.end(),
            [&](const CohortMember& lhs, const CohortMember& rhs) {
              const double lm = candidate_mean(estimators, lhs.link);
              const double rm = candidate_mean(estimators, rhs.link);
              if (lm != rm) return lm < rm;
              if (lhs.vertex != rhs.vertex) return lhs.vertex < rhs.vertex;
              return lhs.link < rhs.link;
            });

  // Parallel links to one peer collapse to the best-ranked one.
  std::vector<CohortMember> ranked;
  ranked.reserve(usable.size());
  std::set<VertexId> seen;
  for (const CohortMember& c : usable) {
    if (seen.insert(c.vertex).second) ranked.push_back(c);
  }

  std::vector<LinkId> links;
  links.reserve(ranked.size());
  for (const CohortMember& c : ranked) links.push_back(c.link);

  const double tc = estimate_tc(estimators, links, tau0);
  plan.tc_estimate = tc;

  SlotEstimator pooled;
  for (LinkId link : links) pooled = SlotEstimator::merge(pooled, estimators.at(link));
  double gamma1 = kNan;
  bool skew_ok = false;
  if (pooled.skewness_defined()) {
    gamma1 = pooled.skewness();
    skew_ok = gamma1 > 0.0;
  }
  plan.gates[0] = GateRecord{"skewness", gamma1, skew_ok};

  const double round_time = task.ta + task.tp + task.ts + 2.0 * tc;
  const bool time_ok = time_feasible(task, tc);
  plan.gates[1] = GateRecord{"time", round_time, time_ok};

  const int n_max = max_cohort_size(task, energy, tc);
  plan.gates[2] = GateRecord{"energy", static_cast<double>(n_max), n_max >= 1};

  if (skew_ok && time_ok && n_max >= 1) {
    plan.action = PlanAction::Split;
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(n_max), ranked.size());
    plan.cohort.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return plan;
}

}  // namespace coopsim
