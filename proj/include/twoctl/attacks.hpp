#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <variant>

#include "twoctl/rational.hpp"

namespace twoctl {

struct AttackSignal;

namespace signal {

struct Zero {
  bool operator==(const Zero&) const = default;
};

/// amplitude for t >= start_time.
struct Step {
  double amplitude = 1.0;
  double start_time = 0.0;
  bool operator==(const Step&) const = default;
};

/// amplitude sin(omega t + phase), omega in rad/s.
struct Sinusoid {
  double amplitude = 1.0;
  double omega = 1.0;
  double phase = 0.0;
  bool operator==(const Sinusoid&) const = default;
};

/// gain exp(eta (t - start_time)) for t >= start_time.
struct Exponential {
  double gain = 1.0;
  double eta = 0.0;
  double start_time = 0.0;
  bool operator==(const Exponential&) const = default;
};

/// The negated response of `plant_model` to `w_component`, from zero
/// initial state. Not pointwise: it has filter state, so it is rendered by
/// the simulation engine.
struct Covert {
  std::shared_ptr<const AttackSignal> w_component;
  RationalFunction plant_model;
  bool operator==(const Covert& other) const;
};

}  // namespace signal

/// Reference or attack waveform.
struct AttackSignal {
  using Variant = std::variant<signal::Zero, signal::Step, signal::Sinusoid, signal::Exponential, signal::Covert>;
  Variant value;

  AttackSignal() = default;
  template <class T>
    requires std::is_constructible_v<Variant, T>
  AttackSignal(T v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  bool operator==(const AttackSignal&) const = default;
  bool is_zero() const { return std::holds_alternative<signal::Zero>(value); }
  bool is_pointwise() const { return !std::holds_alternative<signal::Covert>(value); }
};

/// Throws DomainError for negative start times or an improper covert model.
void validate(const AttackSignal& sig);

/// Pointwise value at t >= 0 (zero before start_time). Throws DomainError
/// for covert signals, which need the simulation engine's filter state.
double sample(const AttackSignal& sig, double t);

/// Exponential at the largest real right-half-plane zero of the plant, or
/// nullopt if the plant has none.
std::optional<AttackSignal> zero_dynamics_attack(const RationalFunction& plant, double gain);

/// Double-point attack: w = w_sig and z = -(plant_model * w_sig), so that the
/// uncoded loop's measurement y sees no trace of w. Throws DomainError if
/// plant_model is improper.
std::pair<AttackSignal, AttackSignal> covert_pair(const AttackSignal& w_sig, const RationalFunction& plant_model);

/// A signal as a proper filter applied to a pointwise base signal:
/// sig = filter * base. Pointwise signals decompose with filter 1.
struct FilteredSignal {
  RationalFunction filter;
  AttackSignal base;
};
FilteredSignal decompose(const AttackSignal& sig);

}  // namespace twoctl
