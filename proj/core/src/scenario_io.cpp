#include "coopsim/scenario_io.hpp"

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coopsim {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void check_keys(const json& obj, const std::string& path,
                const std::vector<const char*>& allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ScenarioValidationError(path.empty() ? item.key() : path + "." + item.key(),
                                    "unknown key");
    }
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ScenarioValidationError(path.empty() ? key : path + "." + key, "missing required key");
  }
  return *it;
}

double require_number(const json& obj, const std::string& path, const char* key) {
  const json& v = require(obj, path, key);
  if (!v.is_number()) {
    throw ScenarioValidationError(path.empty() ? key : path + "." + key, "must be a number");
  }
  return v.get<double>();
}

std::uint64_t require_uint(const json& obj, const std::string& path, const char* key) {
  const json& v = require(obj, path, key);
  if (!v.is_number_unsigned()) {
    throw ScenarioValidationError(path.empty() ? key : path + "." + key,
                                  "must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool optional_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) {
    throw ScenarioValidationError(path.empty() ? key : path + "." + key, "must be a boolean");
  }
  return it->get<bool>();
}

std::uint64_t optional_uint(const json& obj, const std::string& path, const char* key,
                            std::uint64_t fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned()) {
    throw ScenarioValidationError(path.empty() ? key : path + "." + key,
                                  "must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

DeviceKind parse_device_kind(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "phone") return DeviceKind::Phone;
    if (s == "base_station") return DeviceKind::BaseStation;
    if (s == "wifi_ap") return DeviceKind::WifiAccessPoint;
  }
  throw ScenarioValidationError(path, "must be one of \"phone\", \"base_station\", \"wifi_ap\"");
}

LinkKind parse_link_kind(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "wifi") return LinkKind::WifiLink;
    if (s == "cell") return LinkKind::CellLink;
  }
  throw ScenarioValidationError(path, "must be \"wifi\" or \"cell\"");
}

DemandModel parse_demand_spec(const json& obj, const std::string& path,
                              std::initializer_list<const char*> extra_keys) {
  const json& kind_v = require(obj, path, "kind");
  if (!kind_v.is_string()) throw ScenarioValidationError(path + ".kind", "must be a string");
  const auto kind = kind_v.get<std::string>();

  std::vector<const char*> allowed{"kind"};
  allowed.insert(allowed.end(), extra_keys.begin(), extra_keys.end());

  try {
    if (kind == "constant") {
      allowed.push_back("bits");
      check_keys(obj, path, allowed);
      return DemandModel::constant(require_uint(obj, path, "bits"));
    }
    if (kind == "uniform") {
      allowed.push_back("lo");
      allowed.push_back("hi");
      check_keys(obj, path, allowed);
      return DemandModel::uniform(require_uint(obj, path, "lo"),
                                  require_uint(obj, path, "hi"));
    }
    if (kind == "two_point") {
      allowed.push_back("a");
      allowed.push_back("b");
      allowed.push_back("p");
      check_keys(obj, path, allowed);
      return DemandModel::two_point(require_uint(obj, path, "a"),
                                    require_uint(obj, path, "b"),
                                    require_number(obj, path, "p"));
    }
  } catch (const ParameterOutOfRangeError& e) {
    throw ScenarioValidationError(path + "." + e.field(), e.what());
  }
  throw ScenarioValidationError(path + ".kind",
                                "must be \"constant\", \"uniform\" or \"two_point\"");
}

EnergyModel parse_energy(const json& obj, const std::string& path) {
  const json& form_v = require(obj, path, "form");
  if (!form_v.is_string()) throw ScenarioValidationError(path + ".form", "must be a string");
  const auto form = form_v.get<std::string>();

  try {
    if (form == "identity") {
      check_keys(obj, path, {"form"});
      return EnergyModel::identity();
    }
    if (form == "linear") {
      check_keys(obj, path, {"form", "coefficient"});
      return EnergyModel::linear(require_number(obj, path, "coefficient"));
    }
    if (form == "affine") {
      check_keys(obj, path, {"form", "coefficient", "offset"});
      return EnergyModel::affine(require_number(obj, path, "coefficient"),
                                 require_number(obj, path, "offset"));
    }
    if (form == "power_law") {
      check_keys(obj, path, {"form", "coefficient", "exponent"});
      return EnergyModel::power_law(require_number(obj, path, "coefficient"),
                                    require_number(obj, path, "exponent"));
    }
  } catch (const ParameterOutOfRangeError& e) {
    throw ScenarioValidationError(path + "." + e.field(), e.what());
  }
  throw ScenarioValidationError(path + ".form",
                                "must be \"identity\", \"linear\", \"affine\" or \"power_law\"");
}

std::string device_kind_name(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Phone:
      return "phone";
    case DeviceKind::BaseStation:
      return "base_station";
    case DeviceKind::WifiAccessPoint:
      return "wifi_ap";
  }
  return "phone";
}

std::string demand_kind_name(DemandModel::Kind kind) {
  switch (kind) {
    case DemandModel::Kind::Constant:
      return "constant";
    case DemandModel::Kind::Uniform:
      return "uniform";
    case DemandModel::Kind::TwoPoint:
      return "two_point";
  }
  return "constant";
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ScenarioSyntaxError(line, column, e.what());
  }
  if (!doc.is_object()) throw ScenarioValidationError("", "document must be a JSON object");

  check_keys(doc, "",
             {"network", "devices", "links", "task", "energy", "demand", "rounds", "warmup",
              "churn", "seed"});

  Scenario scenario;

  // network
  const json& network = require(doc, "", "network");
  if (!network.is_object()) throw ScenarioValidationError("network", "must be an object");
  check_keys(network, "network", {"c0", "tau0", "c0_is_asymptotic"});
  scenario.params.c0 = require_number(network, "network", "c0");
  scenario.params.tau0 = require_number(network, "network", "tau0");
  scenario.params.c0_is_asymptotic = optional_bool(network, "network", "c0_is_asymptotic", false);
  if (!(scenario.params.c0 > 0.0)) throw ScenarioValidationError("network.c0", "must be > 0");
  if (!(scenario.params.tau0 > 0.0)) throw ScenarioValidationError("network.tau0", "must be > 0");

  // devices
  const json& devices = require(doc, "", "devices");
  if (!devices.is_array() || devices.empty()) {
    throw ScenarioValidationError("devices", "must be a non-empty array");
  }
  bool initiator_set = false;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const std::string path = "devices[" + std::to_string(i) + "]";
    const json& d = devices[i];
    if (!d.is_object()) throw ScenarioValidationError(path, "must be an object");
    check_keys(d, path, {"kind", "initiator"});
    const DeviceKind kind = parse_device_kind(require(d, path, "kind"), path + ".kind");
    const VertexId id = scenario.graph.add_device(kind);
    if (optional_bool(d, path, "initiator", false)) {
      if (initiator_set) {
        throw ScenarioValidationError(path + ".initiator", "initiator already chosen");
      }
      if (kind != DeviceKind::Phone) {
        throw ScenarioValidationError(path + ".initiator", "initiator must be a phone");
      }
      scenario.initiator = id;
      initiator_set = true;
    }
  }
  if (!initiator_set) {
    bool found = false;
    for (const Vertex& v : scenario.graph.vertices()) {
      if (v.kind == DeviceKind::Phone) {
        scenario.initiator = v.id;
        found = true;
        break;
      }
    }
    if (!found) throw ScenarioValidationError("devices", "no phone available as initiator");
  }

  // links
  if (auto it = doc.find("links"); it != doc.end()) {
    const json& links = *it;
    if (!links.is_array()) throw ScenarioValidationError("links", "must be an array");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string path = "links[" + std::to_string(i) + "]";
      const json& l = links[i];
      if (!l.is_object()) throw ScenarioValidationError(path, "must be an object");
      check_keys(l, path, {"a", "b", "kind", "rho_capacity", "rho_delay"});
      const std::uint64_t a = require_uint(l, path, "a");
      const std::uint64_t b = require_uint(l, path, "b");
      if (a >= scenario.graph.vertex_count()) {
        throw ScenarioValidationError(path + ".a", "references a device that does not exist");
      }
      if (b >= scenario.graph.vertex_count()) {
        throw ScenarioValidationError(path + ".b", "references a device that does not exist");
      }
      const LinkKind kind = parse_link_kind(require(l, path, "kind"), path + ".kind");
      try {
        scenario.graph.add_link(VertexId{static_cast<std::uint32_t>(a)},
                                VertexId{static_cast<std::uint32_t>(b)}, kind,
                                require_number(l, path, "rho_capacity"),
                                require_number(l, path, "rho_delay"));
      } catch (const ParameterOutOfRangeError& e) {
        throw ScenarioValidationError(path + "." + e.field(), e.what());
      } catch (const SelfLoopError& e) {
        throw ScenarioValidationError(path, e.what());
      }
    }
  }

  // task
  const json& task = require(doc, "", "task");
  if (!task.is_object()) throw ScenarioValidationError("task", "must be an object");
  check_keys(task, "task", {"t0", "ta", "ts", "tp", "payload_bits_per_neighbor", "local_tp"});
  scenario.task.t0 = require_number(task, "task", "t0");
  scenario.task.ta = require_number(task, "task", "ta");
  scenario.task.ts = require_number(task, "task", "ts");
  scenario.task.tp = require_number(task, "task", "tp");
  scenario.task.payload_bits_per_neighbor = require_uint(task, "task", "payload_bits_per_neighbor");
  scenario.local_tp = require_number(task, "task", "local_tp");
  for (const auto& [key, value] :
       std::initializer_list<std::pair<const char*, double>>{{"t0", scenario.task.t0},
                                                             {"ta", scenario.task.ta},
                                                             {"ts", scenario.task.ts},
                                                             {"tp", scenario.task.tp},
                                                             {"local_tp", scenario.local_tp}}) {
    if (!(value > 0.0)) {
      throw ScenarioValidationError(std::string("task.") + key, "must be > 0");
    }
  }
  if (scenario.task.payload_bits_per_neighbor < 1) {
    throw ScenarioValidationError("task.payload_bits_per_neighbor", "must be >= 1");
  }

  // energy
  const json& energy = require(doc, "", "energy");
  if (!energy.is_object()) throw ScenarioValidationError("energy", "must be an object");
  scenario.energy = parse_energy(energy, "energy");

  // demand
  if (auto it = doc.find("demand"); it != doc.end()) {
    const json& demand = *it;
    if (!demand.is_object()) throw ScenarioValidationError("demand", "must be an object");
    check_keys(demand, "demand", {"default", "per_link"});
    std::optional<DemandModel> fallback;
    if (auto d = demand.find("default"); d != demand.end()) {
      if (!d->is_object()) throw ScenarioValidationError("demand.default", "must be an object");
      fallback = parse_demand_spec(*d, "demand.default", {});
    }
    std::set<std::uint64_t> seen;
    if (auto p = demand.find("per_link"); p != demand.end()) {
      if (!p->is_array()) throw ScenarioValidationError("demand.per_link", "must be an array");
      for (std::size_t i = 0; i < p->size(); ++i) {
        const std::string path = "demand.per_link[" + std::to_string(i) + "]";
        const json& entry = (*p)[i];
        if (!entry.is_object()) throw ScenarioValidationError(path, "must be an object");
        const std::uint64_t link = require_uint(entry, path, "link");
        if (link >= scenario.graph.link_count()) {
          throw ScenarioValidationError(path + ".link", "references a link that does not exist");
        }
        if (!seen.insert(link).second) {
          throw ScenarioValidationError(path + ".link", "duplicate demand for this link");
        }
        scenario.demand.emplace(LinkId{static_cast<std::uint32_t>(link)},
                                parse_demand_spec(entry, path, {"link"}));
      }
    }
    if (fallback) {
      for (const Link& link : scenario.graph.links()) {
        if (!scenario.demand.contains(link.id)) scenario.demand.emplace(link.id, *fallback);
      }
    }
  }

  // rounds / warmup / seed
  scenario.rounds = require_uint(doc, "", "rounds");
  if (scenario.rounds < 1) throw ScenarioValidationError("rounds", "must be >= 1");
  scenario.warmup = optional_uint(doc, "", "warmup", 3);
  scenario.seed = optional_uint(doc, "", "seed", 0);

  // churn
  if (auto it = doc.find("churn"); it != doc.end()) {
    const json& churn = *it;
    if (!churn.is_array()) throw ScenarioValidationError("churn", "must be an array");
    for (std::size_t i = 0; i < churn.size(); ++i) {
      const std::string path = "churn[" + std::to_string(i) + "]";
      const json& e = churn[i];
      if (!e.is_object()) throw ScenarioValidationError(path, "must be an object");
      check_keys(e, path, {"round", "device", "alive", "phase"});
      ChurnEvent event;
      event.round = require_uint(e, path, "round");
      if (event.round < 1) throw ScenarioValidationError(path + ".round", "must be >= 1");
      const std::uint64_t device = require_uint(e, path, "device");
      if (device >= scenario.graph.vertex_count()) {
        throw ScenarioValidationError(path + ".device", "references a device that does not exist");
      }
      event.vertex = VertexId{static_cast<std::uint32_t>(device)};
      const json& alive = require(e, path, "alive");
      if (!alive.is_boolean()) throw ScenarioValidationError(path + ".alive", "must be a boolean");
      event.alive = alive.get<bool>();
      if (auto ph = e.find("phase"); ph != e.end()) {
        if (!ph->is_string()) throw ScenarioValidationError(path + ".phase", "must be a string");
        const auto s = ph->get<std::string>();
        if (s == "start") {
          event.phase = ChurnPhase::RoundStart;
        } else if (s == "mid") {
          event.phase = ChurnPhase::MidRound;
        } else {
          throw ScenarioValidationError(path + ".phase", "must be \"start\" or \"mid\"");
        }
      }
      scenario.churn.push_back(event);
    }
  }

  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioValidationError(path, "cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& scenario) {
  ordered_json doc;

  doc["network"] = {{"c0", scenario.params.c0},
                    {"tau0", scenario.params.tau0},
                    {"c0_is_asymptotic", scenario.params.c0_is_asymptotic}};

  ordered_json devices = ordered_json::array();
  for (const Vertex& v : scenario.graph.vertices()) {
    ordered_json d;
    d["kind"] = device_kind_name(v.kind);
    if (v.id == scenario.initiator) d["initiator"] = true;
    devices.push_back(d);
  }
  doc["devices"] = devices;

  ordered_json links = ordered_json::array();
  for (const Link& l : scenario.graph.links()) {
    links.push_back({{"a", l.a.value},
                     {"b", l.b.value},
                     {"kind", l.kind == LinkKind::WifiLink ? "wifi" : "cell"},
                     {"rho_capacity", l.rho_capacity},
                     {"rho_delay", l.rho_delay}});
  }
  doc["links"] = links;

  doc["task"] = {{"t0", scenario.task.t0},
                 {"ta", scenario.task.ta},
                 {"ts", scenario.task.ts},
                 {"tp", scenario.task.tp},
                 {"payload_bits_per_neighbor", scenario.task.payload_bits_per_neighbor},
                 {"local_tp", scenario.local_tp}};

  ordered_json energy;
  switch (scenario.energy.form()) {
    case EnergyModel::Form::Identity:
      energy["form"] = "identity";
      break;
    case EnergyModel::Form::Linear:
      energy["form"] = "linear";
      energy["coefficient"] = scenario.energy.coefficient();
      break;
    case EnergyModel::Form::Affine:
      energy["form"] = "affine";
      energy["coefficient"] = scenario.energy.coefficient();
      energy["offset"] = scenario.energy.offset();
      break;
    case EnergyModel::Form::PowerLaw:
      energy["form"] = "power_law";
      energy["coefficient"] = scenario.energy.coefficient();
      energy["exponent"] = scenario.energy.exponent();
      break;
  }
  doc["energy"] = energy;

  if (!scenario.demand.empty()) {
    ordered_json per_link = ordered_json::array();
    for (const auto& [link, model] : scenario.demand) {
      ordered_json entry;
      entry["link"] = link.value;
      entry["kind"] = demand_kind_name(model.kind());
      switch (model.kind()) {
        case DemandModel::Kind::Constant:
          entry["bits"] = model.a();
          break;
        case DemandModel::Kind::Uniform:
          entry["lo"] = model.a();
          entry["hi"] = model.b();
          break;
        case DemandModel::Kind::TwoPoint:
          entry["a"] = model.a();
          entry["b"] = model.b();
          entry["p"] = model.p();
          break;
      }
      per_link.push_back(entry);
    }
    doc["demand"] = {{"per_link", per_link}};
  }

  doc["rounds"] = scenario.rounds;
  doc["warmup"] = scenario.warmup;

  if (!scenario.churn.empty()) {
    ordered_json churn = ordered_json::array();
    for (const ChurnEvent& e : scenario.churn) {
      churn.push_back({{"round", e.round},
                       {"device", e.vertex.value},
                       {"alive", e.alive},
                       {"phase", e.phase == ChurnPhase::RoundStart ? "start" : "mid"}});
    }
    doc["churn"] = churn;
  }

  doc["seed"] = scenario.seed;

  return doc.dump(2) + "\n";
}

}  // namespace coopsim
