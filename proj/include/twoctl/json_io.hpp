#pragma once

// JSON forms of the domain values. Every parse_* function reports problems
// as ConfigError carrying the JSON pointer of the offending value.

#include <string>

#include <nlohmann/json.hpp>

#include "twoctl/attacks.hpp"
#include "twoctl/closedloop.hpp"
#include "twoctl/coding.hpp"
#include "twoctl/decoupling.hpp"
#include "twoctl/rational.hpp"

namespace twoctl::json_io {

using nlohmann::json;

/// Ascending coefficients, e.g. [2, 3, 1] for s^2 + 3 s + 2.
json to_json(const Polynomial& p);
Polynomial parse_polynomial(const json& j, const std::string& path);

/// {"num": [...], "den": [...]}. A bare number parses as a constant map.
json to_json(const RationalFunction& x);
RationalFunction parse_rational(const json& j, const std::string& path);

/// {"type": "none"} | {"type": "one_way", "alpha", "beta"} |
/// {"type": "two_way", "a", "b", "c", "d"}. Validity is enforced.
json to_json(const CodingScheme& coding);
CodingScheme parse_coding(const json& j, const std::string& path);

/// {"type": "zero" | "step" | "sinusoid" | "exponential" | "covert", ...}.
/// An exponential with "eta": "auto" takes its exponent from the largest real
/// right-half-plane zero of `plant` (error if there is none or no plant).
json to_json(const AttackSignal& sig);
AttackSignal parse_signal(const json& j, const std::string& path, const RationalFunction* plant = nullptr);

json to_json(const SixTransferFunctions& tfs);
SixTransferFunctions parse_six(const json& j, const std::string& path);

/// {"feasible": bool, "K": number|null, "M": [a,b,c,d]|null, "reason": string|null}.
json to_json(const DesignResult& result);
DesignResult parse_design_result(const json& j, const std::string& path);

/// Finite reals as numbers; -inf as the string "-inf" (and +inf as "inf").
json real_or_sentinel(double v);
double parse_real_or_sentinel(const json& j, const std::string& path);

DecouplingTarget parse_target(const std::string& s);

// Field helpers shared with the scenario loader.
double require_number(const json& obj, const std::string& key, const std::string& path);
double number_or(const json& obj, const std::string& key, double fallback, const std::string& path);
const json& require_object(const json& j, const std::string& path);

}  // namespace twoctl::json_io
