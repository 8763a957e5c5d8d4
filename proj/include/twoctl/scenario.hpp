#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "twoctl/attacks.hpp"
#include "twoctl/coding.hpp"
#include "twoctl/decoupling.hpp"
#include "twoctl/simulate.hpp"

namespace twoctl {

/// A scenario's `design` block could not be satisfied.
class DesignInfeasibleError : public std::runtime_error {
 public:
  explicit DesignInfeasibleError(const Infeasible& why)
      : std::runtime_error("design infeasible: " + why.reason), reason_(why) {}
  const Infeasible& reason() const { return reason_; }

 private:
  Infeasible reason_;
};

struct DesignRequest {
  DecouplingTarget target = DecouplingTarget::ForwardAttackW;
  FreeParams free;
  bool operator==(const DesignRequest& o) const {
    return target == o.target && free.a == o.free.a && free.b == o.free.b && free.c == o.free.c &&
           free.d == o.free.d && free.gain == o.free.gain;
  }
};

struct OutputPaths {
  std::optional<std::string> csv;
  std::optional<std::string> metadata;
  std::optional<std::string> report;
  bool operator==(const OutputPaths&) const = default;
};

/// Fully resolved scenario: a `design` block, if present, has already been
/// turned into the controller gain and coding matrix of `model`.
struct ScenarioConfig {
  std::string name = "scenario";
  LoopModel model;
  std::optional<DesignRequest> design;
  AttackSignal reference;
  AttackSignal w;
  AttackSignal z;
  SimulationOptions sim;
  OutputPaths outputs;

  bool operator==(const ScenarioConfig& o) const {
    return name == o.name && model == o.model && design == o.design && reference == o.reference && w == o.w &&
           z == o.z && sim.t_end == o.sim.t_end && sim.dt == o.sim.dt && outputs == o.outputs;
  }
  LoopInputs inputs() const { return {reference, w, z}; }
};

/// Validates and resolves a scenario document (see schema/scenario.schema.json).
/// Throws ConfigError (with a JSON pointer) or DesignInfeasibleError.
ScenarioConfig parse_scenario(const nlohmann::json& doc, const Tolerances& tol = {});

/// Resolved form: emits controller and coding, never a design block.
nlohmann::json to_json(const ScenarioConfig& config);

/// FNV-1a of the compact dump of a JSON document.
std::uint64_t json_hash(const nlohmann::json& doc);

}  // namespace twoctl
