// Command-line front end: validate scenario files, run single simulations,
// sweep seed lists. Exit codes: 0 success, 1 validation failure, 2 runtime
// failure. COOPSIM_LOG=debug enables progress notes on stderr (verbosity
// only, never behavior).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopsim/metrics.hpp"
#include "coopsim/scenario_io.hpp"
#include "coopsim/sim_engine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

bool log_enabled() {
  const char* level = std::getenv("COOPSIM_LOG");
  return level != nullptr && std::string(level) != "" && std::string(level) != "off";
}

void log_note(const std::string& message) {
  if (log_enabled()) std::cerr << "[coopsim] " << message << "\n";
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw coopsim::Error("cannot open output file: " + out_path);
  out << text;
}

int run_command(const std::string& file, bool seed_set, std::uint64_t seed,
                const std::string& format, const std::string& out_path) {
  coopsim::Scenario scenario = coopsim::load_scenario(file);
  if (seed_set) scenario.seed = seed;
  log_note("running " + file + " with seed " + std::to_string(scenario.seed));

  const coopsim::SimTrace trace = coopsim::run(scenario);
  const auto fmt = format == "jsonl" ? coopsim::MetricsFormat::JsonLines
                                     : coopsim::MetricsFormat::Csv;
  write_output(coopsim::emit_metrics(trace, fmt), out_path);
  return kExitOk;
}

int sweep_command(const std::string& file, const std::vector<std::uint64_t>& seeds,
                  const std::string& out_path) {
  const coopsim::Scenario scenario = coopsim::load_scenario(file);
  log_note("sweeping " + file + " over " + std::to_string(seeds.size()) + " seeds");
  const coopsim::SweepResult result = coopsim::sweep(scenario, seeds);
  write_output(coopsim::emit_sweep(result), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative task-offloading simulator"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", file, "scenario JSON file")->required();

  CLI::App* run_cmd = app.add_subcommand("run", "Run one simulation");
  run_cmd->add_option("file", file, "scenario JSON file")->required();
  CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the scenario seed");
  run_cmd->add_option("--format", format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  run_cmd->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run one engine per seed and aggregate");
  sweep_cmd->add_option("file", file, "scenario JSON file")->required();
  sweep_cmd->add_option("--seeds", seeds, "comma-separated seed list")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      coopsim::load_scenario(file);
      std::cout << "OK\n";
      return kExitOk;
    }
    if (run_cmd->parsed()) {
      return run_command(file, seed_opt->count() > 0, seed, format, out_path);
    }
    return sweep_command(file, seeds, out_path);
  } catch (const coopsim::ScenarioSyntaxError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const coopsim::ScenarioValidationError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const coopsim::InvalidScenarioError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
