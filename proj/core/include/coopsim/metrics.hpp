#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopsim/sim_engine.hpp"

namespace coopsim {

enum class MetricsFormat { Csv, JsonLines };

struct MetricsRow {
  std::uint64_t round = 0;
  bool split = false;
  int n = 0;
  double tc_estimate = 0.0;               // NaN when no usable candidates
  std::optional<double> skewness;         // pooled snapshot, absent if undefined
  double elapsed = 0.0;
  double energy = 0.0;
  bool deadline_met = false;
};

struct MetricsSummary {
  double split_rate = 0.0;
  double deadline_miss_rate = 0.0;
  double mean_energy_per_round = 0.0;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
  MetricsSummary summary;
};

MetricsReport build_report(const SimTrace& trace);

// Byte-stable rendering of one trace: fixed field order, numbers at 6
// significant digits, "nan" / JSON null for undefined values. CSV carries
// the header row
//   round,decision,n,tc_estimate,skewness,elapsed,energy,deadline_met
// and JSON-lines uses identical field names. Throws Error on empty traces.
std::string emit_metrics(const SimTrace& trace, MetricsFormat format);

struct SweepStat {
  double mean = 0.0;
  double stddev = 0.0;
};

struct SeedSummary {
  std::uint64_t seed = 0;
  MetricsSummary summary;
};

// Per-seed summaries (sorted by seed) plus mean / population standard
// deviation of every summary metric. Independent of seed-list order.
struct SweepResult {
  std::vector<SeedSummary> per_seed;
  SweepStat split_rate;
  SweepStat deadline_miss_rate;
  SweepStat mean_energy_per_round;
};

// One engine per seed (scenario.seed replaced), run independently and
// aggregated. Seeds must be non-empty and distinct; run errors propagate
// tagged with the seed that caused them.
SweepResult sweep(const Scenario& scenario, std::span<const std::uint64_t> seeds);

// Byte-stable JSON rendering of a sweep aggregate.
std::string emit_sweep(const SweepResult& result);

}  // namespace coopsim
