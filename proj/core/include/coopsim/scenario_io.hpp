#pragma once

#include <string>

#include "coopsim/sim_engine.hpp"

namespace coopsim {

// Parses a JSON scenario document. Unknown keys are rejected everywhere
// (strict mode); every diagnostic carries the path to the offending field.
// Defaults: warmup 3, seed 0, c0_is_asymptotic false, links/churn empty,
// initiator = first phone, demand = constant task payload on every link.
// Throws ScenarioSyntaxError for malformed JSON, ScenarioValidationError
// for schema or constraint violations.
Scenario parse_scenario(const std::string& text);

// parse_scenario over a file's contents. Throws ScenarioValidationError
// when the file cannot be read.
Scenario load_scenario(const std::string& path);

// Inverse of parse_scenario: parse(serialize(s)) reproduces an equivalent
// scenario. Explicit about every field, including applied defaults.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace coopsim
