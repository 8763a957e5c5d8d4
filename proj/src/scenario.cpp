#include "twoctl/scenario.hpp"

#include <set>

#include "twoctl/errors.hpp"
#include "twoctl/json_io.hpp"

namespace twoctl {

using json_io::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(path + "/" + key, "unknown property");
}

std::optional<std::string> optional_string(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj.at(key).is_string()) throw ConfigError(path + "/" + key, "expected a string");
  return obj.at(key).get<std::string>();
}

DesignRequest parse_design(const json& j, const std::string& path) {
  json_io::require_object(j, path);
  reject_unknown_keys(j, {"target", "a", "b", "c", "d", "gain"}, path);
  DesignRequest req;
  if (!j.contains("target") || !j.at("target").is_string()) throw ConfigError(path + "/target", "expected \"w\", \"z\" or \"both\"");
  try {
    req.target = json_io::parse_target(j.at("target").get<std::string>());
  } catch (const ConfigError&) {
    throw ConfigError(path + "/target", "expected \"w\", \"z\" or \"both\"");
  }
  req.free.a = json_io::number_or(j, "a", 1.0, path);
  req.free.b = json_io::number_or(j, "b", 1.0, path);
  req.free.c = json_io::number_or(j, "c", 0.0, path);
  req.free.d = json_io::number_or(j, "d", 1.0, path);
  if (j.contains("gain")) req.free.gain = json_io::require_number(j, "gain", path);
  if (req.free.a * req.free.d == 0.0) throw ConfigError(path, "free parameters must satisfy a d != 0");
  return req;
}

}  // namespace

ScenarioConfig parse_scenario(const json& doc, const Tolerances& tol) {
  json_io::require_object(doc, "");
  reject_unknown_keys(doc, {"name", "plant", "controller", "coding", "design", "reference", "attacks", "sim", "outputs"}, "");

  ScenarioConfig cfg;
  if (auto name = optional_string(doc, "name", "")) cfg.name = *name;

  if (!doc.contains("plant")) throw ConfigError("/plant", "required rational function is missing");
  cfg.model.plant = json_io::parse_rational(doc.at("plant"), "/plant");
  if (!cfg.model.plant.is_proper()) throw ConfigError("/plant", "plant must be proper");

  if (doc.contains("design")) {
    if (doc.contains("controller") || doc.contains("coding"))
      throw ConfigError("/design", "a design block replaces controller and coding; do not give both");
    cfg.design = parse_design(doc.at("design"), "/design");
    const auto result = design_decoupling(cfg.model.plant, cfg.design->target, cfg.design->free, {}, tol);
    if (const auto* bad = std::get_if<Infeasible>(&result)) throw DesignInfeasibleError(*bad);
    const auto& ok = std::get<Feasible>(result);
    cfg.model.controller = RationalFunction(ok.gain);
    cfg.model.coding = ok.coding;
  } else {
    if (!doc.contains("controller")) throw ConfigError("/controller", "required rational function is missing");
    cfg.model.controller = json_io::parse_rational(doc.at("controller"), "/controller");
    if (!cfg.model.controller.is_proper()) throw ConfigError("/controller", "controller must be proper");
    cfg.model.coding = doc.contains("coding") ? json_io::parse_coding(doc.at("coding"), "/coding") : CodingScheme{NoCoding{}};
  }

  const RationalFunction* plant = &cfg.model.plant;
  if (doc.contains("reference")) cfg.reference = json_io::parse_signal(doc.at("reference"), "/reference", plant);

  if (doc.contains("attacks")) {
    const auto& a = json_io::require_object(doc.at("attacks"), "/attacks");
    reject_unknown_keys(a, {"w", "z", "covert"}, "/attacks");
    if (a.contains("covert")) {
      if (a.contains("w") || a.contains("z"))
        throw ConfigError("/attacks/covert", "a covert pair sets both w and z; do not give them separately");
      json spec = a.at("covert");
      json_io::require_object(spec, "/attacks/covert");
      spec["type"] = "covert";
      cfg.z = json_io::parse_signal(spec, "/attacks/covert", plant);
      cfg.w = *std::get<signal::Covert>(cfg.z.value).w_component;
    } else {
      if (a.contains("w")) cfg.w = json_io::parse_signal(a.at("w"), "/attacks/w", plant);
      if (a.contains("z")) cfg.z = json_io::parse_signal(a.at("z"), "/attacks/z", plant);
    }
  }

  if (doc.contains("sim")) {
    const auto& s = json_io::require_object(doc.at("sim"), "/sim");
    reject_unknown_keys(s, {"t_end", "dt"}, "/sim");
    cfg.sim.t_end = json_io::number_or(s, "t_end", cfg.sim.t_end, "/sim");
    cfg.sim.dt = json_io::number_or(s, "dt", cfg.sim.dt, "/sim");
    if (!(cfg.sim.dt > 0.0)) throw ConfigError("/sim/dt", "must be positive");
    if (!(cfg.sim.t_end >= cfg.sim.dt)) throw ConfigError("/sim/t_end", "must be at least dt");
  }

  if (doc.contains("outputs")) {
    const auto& o = json_io::require_object(doc.at("outputs"), "/outputs");
    reject_unknown_keys(o, {"csv", "metadata", "report"}, "/outputs");
    cfg.outputs.csv = optional_string(o, "csv", "/outputs");
    cfg.outputs.metadata = optional_string(o, "metadata", "/outputs");
    cfg.outputs.report = optional_string(o, "report", "/outputs");
  }
  return cfg;
}

json to_json(const ScenarioConfig& cfg) {
  json out{{"name", cfg.name},
           {"plant", json_io::to_json(cfg.model.plant)},
           {"controller", json_io::to_json(cfg.model.controller)},
           {"coding", json_io::to_json(cfg.model.coding)},
           {"reference", json_io::to_json(cfg.reference)},
           {"attacks", {{"w", json_io::to_json(cfg.w)}, {"z", json_io::to_json(cfg.z)}}},
           {"sim", {{"t_end", cfg.sim.t_end}, {"dt", cfg.sim.dt}}}};
  json outputs = json::object();
  if (cfg.outputs.csv) outputs["csv"] = *cfg.outputs.csv;
  if (cfg.outputs.metadata) outputs["metadata"] = *cfg.outputs.metadata;
  if (cfg.outputs.report) outputs["report"] = *cfg.outputs.report;
  if (!outputs.empty()) out["outputs"] = outputs;
  return out;
}

std::uint64_t json_hash(const json& doc) {
  const std::string s = doc.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace twoctl
