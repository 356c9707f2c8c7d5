#include <string>

#include "doctest.h"

#include "coopsim/metrics.hpp"
#include "coopsim/scenario_io.hpp"

using namespace coopsim;

namespace {

const char* kMinimal = R"({
  "network": {"c0": 1000.0, "tau0": 1.0},
  "devices": [{"kind": "phone"}, {"kind": "phone"}],
  "links": [{"a": 0, "b": 1, "kind": "wifi", "rho_capacity": 0.5, "rho_delay": 0.2}],
  "task": {"t0": 40.0, "ta": 2.0, "ts": 2.0, "tp": 5.0,
           "payload_bits_per_neighbor": 700, "local_tp": 20.0},
  "energy": {"form": "identity"},
  "rounds": 5
})";

std::string checked_path(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioValidationError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("a minimal document parses with defaults applied") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.warmup == 3);
  CHECK(s.seed == 0);
  CHECK_FALSE(s.params.c0_is_asymptotic);
  CHECK(s.initiator == VertexId{0});  // first phone
  CHECK(s.graph.vertex_count() == 2);
  CHECK(s.graph.link_count() == 1);
  CHECK(s.rounds == 5);
  CHECK(s.churn.empty());
  CHECK(s.demand.empty());  // filled by the engine at construction
  CHECK_NOTHROW(run(s));
}

TEST_CASE("out-of-range link parameters name the exact field") {
  const std::string doc = std::string(R"({
  "network": {"c0": 1000.0, "tau0": 1.0},
  "devices": [{"kind": "phone"}, {"kind": "phone"}],
  "links": [{"a": 0, "b": 1, "kind": "wifi", "rho_capacity": 1.5, "rho_delay": 0.2}],
  "task": {"t0": 40.0, "ta": 2.0, "ts": 2.0, "tp": 5.0,
           "payload_bits_per_neighbor": 700, "local_tp": 20.0},
  "energy": {"form": "identity"},
  "rounds": 5
})");
  CHECK(checked_path(doc) == "links[0].rho_capacity");
}

TEST_CASE("unknown keys are rejected in strict mode") {
  std::string doc(kMinimal);
  doc.insert(doc.rfind('}'), R"(, "foo": 1)");
  CHECK(checked_path(doc) == "foo");

  std::string nested(kMinimal);
  const auto pos = nested.find("\"tau0\"");
  nested.insert(pos, "\"turbo\": true, ");
  CHECK(checked_path(nested) == "network.turbo");
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_scenario("{\n  \"network\": {,}\n}");
    FAIL("expected ScenarioSyntaxError");
  } catch (const ScenarioSyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("field constraint diagnostics carry the path") {
  SUBCASE("self loop") {
    std::string doc(kMinimal);
    const auto pos = doc.find("\"b\": 1");
    doc.replace(pos, 6, "\"b\": 0");
    CHECK(checked_path(doc) == "links[0]");
  }
  SUBCASE("dangling endpoint") {
    std::string doc(kMinimal);
    const auto pos = doc.find("\"b\": 1");
    doc.replace(pos, 6, "\"b\": 9");
    CHECK(checked_path(doc) == "links[0].b");
  }
  SUBCASE("non-positive duration") {
    std::string doc(kMinimal);
    const auto pos = doc.find("\"ta\": 2.0");
    doc.replace(pos, 9, "\"ta\": 0.0");
    CHECK(checked_path(doc) == "task.ta");
  }
  SUBCASE("zero rounds") {
    std::string doc(kMinimal);
    const auto pos = doc.find("\"rounds\": 5");
    doc.replace(pos, 11, "\"rounds\": 0");
    CHECK(checked_path(doc) == "rounds");
  }
}

TEST_CASE("energy forms parse and validate") {
  std::string doc(kMinimal);
  const auto pos = doc.find(R"({"form": "identity"})");

  SUBCASE("linear") {
    std::string d = doc;
    d.replace(pos, 20, R"({"form": "linear", "coefficient": 2.5})");
    const Scenario s = parse_scenario(d);
    CHECK(s.energy.form() == EnergyModel::Form::Linear);
    CHECK(s.energy.evaluate(2.0) == doctest::Approx(5.0));
  }
  SUBCASE("affine") {
    std::string d = doc;
    d.replace(pos, 20, R"({"form": "affine", "coefficient": 2.0, "offset": 1.0})");
    CHECK(parse_scenario(d).energy.form() == EnergyModel::Form::Affine);
  }
  SUBCASE("power law") {
    std::string d = doc;
    d.replace(pos, 20, R"({"form": "power_law", "coefficient": 1.0, "exponent": 2.0})");
    CHECK(parse_scenario(d).energy.form() == EnergyModel::Form::PowerLaw);
  }
  SUBCASE("unknown form") {
    std::string d = doc;
    d.replace(pos, 20, R"({"form": "quadratic"})");
    CHECK(checked_path(d) == "energy.form");
  }
  SUBCASE("bad coefficient") {
    std::string d = doc;
    d.replace(pos, 20, R"({"form": "linear", "coefficient": -1.0})");
    CHECK(checked_path(d) == "energy.coefficient");
  }
  SUBCASE("stray key for the form") {
    std::string d = doc;
    d.replace(pos, 20, R"({"form": "identity", "coefficient": 1.0})");
    CHECK(checked_path(d) == "energy.coefficient");
  }
}

TEST_CASE("demand section: default, overrides, duplicates") {
  std::string doc(kMinimal);
  const auto pos = doc.rfind('}');

  SUBCASE("default plus override") {
    std::string d = doc;
    d.insert(pos, R"(, "demand": {
      "default": {"kind": "constant", "bits": 500},
      "per_link": [{"link": 0, "kind": "uniform", "lo": 100, "hi": 900}]
    })");
    const Scenario s = parse_scenario(d);
    REQUIRE(s.demand.size() == 1);
    CHECK(s.demand.at(LinkId{0}).kind() == DemandModel::Kind::Uniform);
  }
  SUBCASE("duplicate per-link entry") {
    std::string d = doc;
    d.insert(pos, R"(, "demand": {"per_link": [
      {"link": 0, "kind": "constant", "bits": 500},
      {"link": 0, "kind": "constant", "bits": 600}
    ]})");
    CHECK(checked_path(d) == "demand.per_link[1].link");
  }
  SUBCASE("unknown demand kind") {
    std::string d = doc;
    d.insert(pos, R"(, "demand": {"default": {"kind": "poisson", "bits": 1}})");
    CHECK(checked_path(d) == "demand.default.kind");
  }
  SUBCASE("two_point probability out of range") {
    std::string d = doc;
    d.insert(pos, R"(, "demand": {"default": {"kind": "two_point", "a": 1, "b": 2, "p": 1.5}})");
    CHECK(checked_path(d) == "demand.default.p");
  }
}

TEST_CASE("churn entries parse with phases") {
  std::string doc(kMinimal);
  const auto pos = doc.rfind('}');

  SUBCASE("valid events") {
    std::string d = doc;
    d.insert(pos, R"(, "churn": [
      {"round": 2, "device": 1, "alive": false},
      {"round": 3, "device": 1, "alive": true, "phase": "mid"}
    ])");
    const Scenario s = parse_scenario(d);
    REQUIRE(s.churn.size() == 2);
    CHECK(s.churn[0].phase == ChurnPhase::RoundStart);
    CHECK(s.churn[1].phase == ChurnPhase::MidRound);
  }
  SUBCASE("bad phase") {
    std::string d = doc;
    d.insert(pos, R"(, "churn": [{"round": 2, "device": 1, "alive": false, "phase": "late"}])");
    CHECK(checked_path(d) == "churn[0].phase");
  }
  SUBCASE("unknown device") {
    std::string d = doc;
    d.insert(pos, R"(, "churn": [{"round": 2, "device": 9, "alive": false}])");
    CHECK(checked_path(d) == "churn[0].device");
  }
}

TEST_CASE("initiator selection rules") {
  SUBCASE("explicit flag wins") {
    std::string doc(kMinimal);
    const auto pos = doc.find(R"([{"kind": "phone"}, {"kind": "phone"}])");
    std::string d = doc;
    d.replace(pos, 38, R"([{"kind": "phone"}, {"kind": "phone", "initiator": true}])");
    CHECK(parse_scenario(d).initiator == VertexId{1});
  }
  SUBCASE("two initiators rejected") {
    std::string doc(kMinimal);
    const auto pos = doc.find(R"([{"kind": "phone"}, {"kind": "phone"}])");
    std::string d = doc;
    d.replace(pos, 38,
              R"([{"kind": "phone", "initiator": true}, {"kind": "phone", "initiator": true}])");
    CHECK(checked_path(d) == "devices[1].initiator");
  }
  SUBCASE("initiator must be a phone") {
    std::string doc(kMinimal);
    const auto pos = doc.find(R"({"kind": "phone"}, {"kind": "phone"})");
    std::string d = doc;
    d.replace(pos, 36, R"({"kind": "base_station", "initiator": true}, {"kind": "phone"})");
    CHECK(checked_path(d) == "devices[0].initiator");
  }
  SUBCASE("no phones at all") {
    std::string doc(kMinimal);
    const auto pos = doc.find(R"({"kind": "phone"}, {"kind": "phone"})");
    std::string d = doc;
    d.replace(pos, 36, R"({"kind": "base_station"}, {"kind": "wifi_ap"})");
    // the link between them is fine; there is just nobody to run the app
    CHECK(checked_path(d) == "devices");
  }
}

TEST_CASE("serialize then parse reproduces an equivalent scenario") {
  std::string doc(kMinimal);
  doc.insert(doc.rfind('}'), R"(, "demand": {
    "default": {"kind": "two_point", "a": 700, "b": 3000, "p": 0.8}
  }, "churn": [{"round": 2, "device": 1, "alive": false, "phase": "mid"}],
  "warmup": 2, "seed": 99)");

  const Scenario original = parse_scenario(doc);
  const std::string text = serialize_scenario(original);
  const Scenario reparsed = parse_scenario(text);

  CHECK(reparsed.graph.vertex_count() == original.graph.vertex_count());
  CHECK(reparsed.graph.link_count() == original.graph.link_count());
  CHECK(reparsed.params.c0 == original.params.c0);
  CHECK(reparsed.params.tau0 == original.params.tau0);
  CHECK(reparsed.task.t0 == original.task.t0);
  CHECK(reparsed.task.payload_bits_per_neighbor == original.task.payload_bits_per_neighbor);
  CHECK(reparsed.local_tp == original.local_tp);
  CHECK(reparsed.rounds == original.rounds);
  CHECK(reparsed.warmup == original.warmup);
  CHECK(reparsed.seed == original.seed);
  CHECK(reparsed.initiator == original.initiator);
  REQUIRE(reparsed.churn.size() == original.churn.size());
  CHECK(reparsed.churn[0].phase == ChurnPhase::MidRound);
  REQUIRE(reparsed.demand.size() == original.demand.size());

  // behavioral equivalence: both runs emit identical bytes
  CHECK(emit_metrics(run(original), MetricsFormat::Csv) ==
        emit_metrics(run(reparsed), MetricsFormat::Csv));
}

TEST_CASE("load_scenario surfaces unreadable files") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), ScenarioValidationError);
}
