#include "coopsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>

namespace coopsim {

namespace {

std::string format_g6(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string json_number(double value) {
  if (std::isnan(value)) return "null";
  return format_g6(value);
}

}  // namespace

MetricsReport build_report(const SimTrace& trace) {
  MetricsReport report;
  report.rows.reserve(trace.outcomes.size());

  std::uint64_t splits = 0;
  std::uint64_t misses = 0;
  double energy_total = 0.0;

  for (std::size_t i = 0; i < trace.outcomes.size(); ++i) {
    const RoundOutcome& outcome = trace.outcomes[i];
    MetricsRow row;
    row.round = outcome.round;
    row.split = outcome.decision.split();
    row.n = outcome.decision.n();
    row.tc_estimate = outcome.decision.tc_estimate;
    if (i < trace.snapshots.size()) row.skewness = trace.snapshots[i].skewness;
    row.elapsed = outcome.elapsed;
    row.energy = outcome.energy_spent;
    row.deadline_met = outcome.deadline_met;
    report.rows.push_back(std::move(row));

    if (outcome.decision.split()) ++splits;
    if (!outcome.deadline_met) ++misses;
    energy_total += outcome.energy_spent;
  }

  const double rounds = static_cast<double>(trace.outcomes.size());
  if (rounds > 0.0) {
    report.summary.split_rate = static_cast<double>(splits) / rounds;
    report.summary.deadline_miss_rate = static_cast<double>(misses) / rounds;
    report.summary.mean_energy_per_round = energy_total / rounds;
  }
  return report;
}

std::string emit_metrics(const SimTrace& trace, MetricsFormat format) {
  if (trace.outcomes.empty()) throw Error("emit_metrics: trace is empty");
  const MetricsReport report = build_report(trace);

  std::string out;
  if (format == MetricsFormat::Csv) {
    out += "round,decision,n,tc_estimate,skewness,elapsed,energy,deadline_met\n";
    for (const MetricsRow& row : report.rows) {
      out += std::to_string(row.round);
      out += row.split ? ",split," : ",local,";
      out += std::to_string(row.n);
      out += ',';
      out += format_g6(row.tc_estimate);
      out += ',';
      out += row.skewness ? format_g6(*row.skewness) : "nan";
      out += ',';
      out += format_g6(row.elapsed);
      out += ',';
      out += format_g6(row.energy);
      out += row.deadline_met ? ",true\n" : ",false\n";
    }
  } else {
    for (const MetricsRow& row : report.rows) {
      out += "{\"round\":" + std::to_string(row.round);
      out += ",\"decision\":\"";
      out += row.split ? "split" : "local";
      out += "\",\"n\":" + std::to_string(row.n);
      out += ",\"tc_estimate\":" + json_number(row.tc_estimate);
      out += ",\"skewness\":";
      out += row.skewness ? json_number(*row.skewness) : "null";
      out += ",\"elapsed\":" + json_number(row.elapsed);
      out += ",\"energy\":" + json_number(row.energy);
      out += ",\"deadline_met\":";
      out += row.deadline_met ? "true}\n" : "false}\n";
    }
  }
  return out;
}

SweepResult sweep(const Scenario& scenario, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw ScenarioValidationError("seeds", "must be non-empty");
  {
    std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) {
      throw ScenarioValidationError("seeds", "must be distinct");
    }
  }

  std::vector<std::future<SeedSummary>> futures;
  futures.reserve(seeds.size());
  for (const std::uint64_t seed : seeds) {
    futures.push_back(std::async(std::launch::async, [&scenario, seed]() {
      Scenario copy = scenario;
      copy.seed = seed;
      const MetricsReport report = build_report(run(copy));
      return SeedSummary{seed, report.summary};
    }));
  }

  SweepResult result;
  result.per_seed.reserve(seeds.size());
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      result.per_seed.push_back(futures[i].get());
    } catch (const Error& e) {
      throw Error("seed " + std::to_string(seeds[i]) + ": " + e.what());
    }
  }
  std::sort(result.per_seed.begin(), result.per_seed.end(),
            [](const SeedSummary& a, const SeedSummary& b) { return a.seed < b.seed; });

  const auto aggregate = [&result](double MetricsSummary::*metric) {
    const double n = static_cast<double>(result.per_seed.size());
    double sum = 0.0;
    for (const SeedSummary& s : result.per_seed) sum += s.summary.*metric;
    const double mean = sum / n;
    double sq = 0.0;
    for (const SeedSummary& s : result.per_seed) {
      const double d = s.summary.*metric - mean;
      sq += d * d;
    }
    return SweepStat{mean, std::sqrt(sq / n)};
  };
  result.split_rate = aggregate(&MetricsSummary::split_rate);
  result.deadline_miss_rate = aggregate(&MetricsSummary::deadline_miss_rate);
  result.mean_energy_per_round = aggregate(&MetricsSummary::mean_energy_per_round);
  return result;
}

std::string emit_sweep(const SweepResult& result) {
  std::string out = "{\n  \"seeds\": [";
  for (std::size_t i = 0; i < result.per_seed.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(result.per_seed[i].seed);
  }
  out += "],\n  \"aggregate\": {\n";
  const auto stat = [](const char* name, const SweepStat& s) {
    return std::string("    \"") + name + "\": {\"mean\": " + format_g6(s.mean) +
           ", \"stddev\": " + format_g6(s.stddev) + "}";
  };
  out += stat("split_rate", result.split_rate) + ",\n";
  out += stat("deadline_miss_rate", result.deadline_miss_rate) + ",\n";
  out += stat("mean_energy_per_round", result.mean_energy_per_round) + "\n  },\n";
  out += "  \"per_seed\": [\n";
  for (std::size_t i = 0; i < result.per_seed.size(); ++i) {
    const SeedSummary& s = result.per_seed[i];
    out += "    {\"seed\": " + std::to_string(s.seed) +
           ", \"split_rate\": " + format_g6(s.summary.split_rate) +
           ", \"deadline_miss_rate\": " + format_g6(s.summary.deadline_miss_rate) +
           ", \"mean_energy_per_round\": " + format_g6(s.summary.mean_energy_per_round) + "}";
    out += (i + 1 < result.per_seed.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace coopsim
