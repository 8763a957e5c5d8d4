#include "twoctl/json_io.hpp"

#include <cmath>
#include <limits>

#include "twoctl/errors.hpp"

namespace twoctl::json_io {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

template <class F>
auto rethrow_as_config(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
  require_object(obj, path);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(child(path, key), "required number is missing");
  if (!it->is_number()) throw ConfigError(child(path, key), "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(child(path, key), "expected a finite number");
  return v;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
  require_object(obj, path);
  if (!obj.contains(key)) return fallback;
  return require_number(obj, key, path);
}

json to_json(const Polynomial& p) { return json(std::vector<double>(p.coeffs().begin(), p.coeffs().end())); }

Polynomial parse_polynomial(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of coefficients (ascending degree)");
  std::vector<double> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(child(path, std::to_string(i)), "expected a number");
    c.push_back(j[i].get<double>());
    if (!std::isfinite(c.back())) throw ConfigError(child(path, std::to_string(i)), "expected a finite number");
  }
  return Polynomial(std::move(c));
}

json to_json(const RationalFunction& x) { return json{{"num", to_json(x.num())}, {"den", to_json(x.den())}}; }

RationalFunction parse_rational(const json& j, const std::string& path) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
    return RationalFunction(v);
  }
  require_object(j, path);
  if (!j.contains("num")) throw ConfigError(child(path, "num"), "required array is missing");
  if (!j.contains("den")) throw ConfigError(child(path, "den"), "required array is missing");
  auto num = parse_polynomial(j.at("num"), child(path, "num"));
  auto den = parse_polynomial(j.at("den"), child(path, "den"));
  if (den.is_zero()) throw ConfigError(child(path, "den"), "denominator is identically zero");
  return rethrow_as_config(path, [&] { return RationalFunction(std::move(num), std::move(den)); });
}

json to_json(const CodingScheme& coding) {
  if (const auto* m = std::get_if<OneWay>(&coding)) return json{{"type", "one_way"}, {"alpha", m->alpha}, {"beta", m->beta}};
  if (const auto* m = std::get_if<TwoWay>(&coding))
    return json{{"type", "two_way"}, {"a", m->a}, {"b", m->b}, {"c", m->c}, {"d", m->d}};
  return json{{"type", "none"}};
}

CodingScheme parse_coding(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("type") || !j.at("type").is_string())
    throw ConfigError(child(path, "type"), "expected one of \"none\", \"one_way\", \"two_way\"");
  const auto type = j.at("type").get<std::string>();
  CodingScheme coding;
  if (type == "none") {
    coding = NoCoding{};
  } else if (type == "one_way") {
    coding = OneWay{require_number(j, "alpha", path), require_number(j, "beta", path)};
  } else if (type == "two_way") {
    coding = TwoWay{require_number(j, "a", path), require_number(j, "b", path), require_number(j, "c", path),
                    require_number(j, "d", path)};
  } else {
    throw ConfigError(child(path, "type"), "unknown coding type \"" + type + "\"");
  }
  rethrow_as_config(path, [&] { validate(coding); });
  return coding;
}

json to_json(const AttackSignal& sig) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, signal::Zero>) {
          return json{{"type", "zero"}};
        } else if constexpr (std::is_same_v<T, signal::Step>) {
          return json{{"type", "step"}, {"amplitude", s.amplitude}, {"start_time", s.start_time}};
        } else if constexpr (std::is_same_v<T, signal::Sinusoid>) {
          return json{{"type", "sinusoid"}, {"amplitude", s.amplitude}, {"omega", s.omega}, {"phase", s.phase}};
        } else if constexpr (std::is_same_v<T, signal::Exponential>) {
          return json{{"type", "exponential"}, {"gain", s.gain}, {"eta", s.eta}, {"start_time", s.start_time}};
        } else {
          return json{{"type", "covert"}, {"w", to_json(*s.w_component)}, {"plant_model", to_json(s.plant_model)}};
        }
      },
      sig.value);
}

AttackSignal parse_signal(const json& j, const std::string& path, const RationalFunction* plant) {
  require_object(j, path);
  if (!j.contains("type") || !j.at("type").is_string())
    throw ConfigError(child(path, "type"), "expected a signal type string");
  const auto type = j.at("type").get<std::string>();
  AttackSignal sig;
  if (type == "zero") {
    sig = signal::Zero{};
  } else if (type == "step") {
    sig = signal::Step{number_or(j, "amplitude", 1.0, path), number_or(j, "start_time", 0.0, path)};
  } else if (type == "sinusoid") {
    sig = signal::Sinusoid{number_or(j, "amplitude", 1.0, path), require_number(j, "omega", path),
                           number_or(j, "phase", 0.0, path)};
  } else if (type == "exponential") {
    const double gain = number_or(j, "gain", 1.0, path);
    const double start = number_or(j, "start_time", 0.0, path);
    if (j.contains("eta") && j.at("eta").is_string()) {
      if (j.at("eta").get<std::string>() != "auto") throw ConfigError(child(path, "eta"), "expected a number or \"auto\"");
      if (!plant) throw ConfigError(child(path, "eta"), "\"auto\" needs a plant");
      const auto zd = zero_dynamics_attack(*plant, gain);
      if (!zd) throw ConfigError(child(path, "eta"), "plant has no real right-half-plane zero");
      auto e = std::get<signal::Exponential>(zd->value);
      e.start_time = start;
      sig = e;
    } else {
      sig = signal::Exponential{gain, require_number(j, "eta", path), start};
    }
  } else if (type == "covert") {
    if (!j.contains("w")) throw ConfigError(child(path, "w"), "covert signal needs a \"w\" component");
    const auto w = parse_signal(j.at("w"), child(path, "w"), plant);
    RationalFunction model;
    if (j.contains("plant_model") && j.at("plant_model").is_string() && j.at("plant_model").get<std::string>() == "plant") {
      if (!plant) throw ConfigError(child(path, "plant_model"), "\"plant\" needs a plant");
      model = *plant;
    } else {
      if (!j.contains("plant_model")) throw ConfigError(child(path, "plant_model"), "required rational function is missing");
      model = parse_rational(j.at("plant_model"), child(path, "plant_model"));
    }
    sig = rethrow_as_config(path, [&] { return covert_pair(w, model).second; });
  } else {
    throw ConfigError(child(path, "type"), "unknown signal type \"" + type + "\"");
  }
  rethrow_as_config(path, [&] { validate(sig); });
  return sig;
}

json to_json(const SixTransferFunctions& tfs) {
  json out = json::object();
  for (auto name : SixTransferFunctions::names) out[std::string(name)] = to_json(tfs[name]);
  return out;
}

SixTransferFunctions parse_six(const json& j, const std::string& path) {
  require_object(j, path);
  SixTransferFunctions tfs;
  for (auto name : SixTransferFunctions::names) {
    const std::string key(name);
    if (!j.contains(key)) throw ConfigError(child(path, key), "missing transfer function");
    tfs[name] = parse_rational(j.at(key), child(path, key));
  }
  return tfs;
}

json to_json(const DesignResult& result) {
  if (const auto* f = std::get_if<Feasible>(&result)) {
    const auto& m = f->coding;
    return json{{"feasible", true}, {"K", f->gain}, {"M", {m.a, m.b, m.c, m.d}}, {"reason", nullptr}};
  }
  return json{{"feasible", false}, {"K", nullptr}, {"M", nullptr}, {"reason", std::get<Infeasible>(result).reason}};
}

DesignResult parse_design_result(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("feasible") || !j.at("feasible").is_boolean())
    throw ConfigError(child(path, "feasible"), "expected a boolean");
  if (!j.at("feasible").get<bool>()) {
    if (!j.contains("reason") || !j.at("reason").is_string()) throw ConfigError(child(path, "reason"), "expected a string");
    return Infeasible{j.at("reason").get<std::string>()};
  }
  const double k = require_number(j, "K", path);
  if (!j.contains("M") || !j.at("M").is_array() || j.at("M").size() != 4)
    throw ConfigError(child(path, "M"), "expected [a, b, c, d]");
  std::array<double, 4> m{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j.at("M")[i].is_number()) throw ConfigError(child(path, "M/" + std::to_string(i)), "expected a number");
    m[i] = j.at("M")[i].get<double>();
  }
  return Feasible{k, TwoWay{m[0], m[1], m[2], m[3]}};
}

json real_or_sentinel(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

double parse_real_or_sentinel(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError(path, "expected a number or \"-inf\"");
}

DecouplingTarget parse_target(const std::string& s) {
  if (s == "w") return DecouplingTarget::ForwardAttackW;
  if (s == "z") return DecouplingTarget::FeedbackAttackZ;
  if (s == "both") return DecouplingTarget::Both;
  throw ConfigError("/target", "expected one of w, z, both");
}

}  // namespace twoctl::json_io
