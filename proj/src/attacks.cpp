#include "twoctl/attacks.hpp"

#include <cmath>

#include "twoctl/errors.hpp"

namespace twoctl {

bool signal::Covert::operator==(const Covert& other) const {
  if (!(plant_model == other.plant_model)) return false;
  if (w_component == other.w_component) return true;
  if (!w_component || !other.w_component) return false;
  return *w_component == *other.w_component;
}

void validate(const AttackSignal& sig) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, signal::Step> || std::is_same_v<T, signal::Exponential>) {
          if (!(s.start_time >= 0.0)) throw DomainError("attack signal: start_time must be >= 0");
        } else if constexpr (std::is_same_v<T, signal::Covert>) {
          if (!s.w_component) throw DomainError("covert attack: missing w component");
          if (!s.plant_model.is_proper()) throw DomainError("covert attack: plant model must be proper");
          validate(*s.w_component);
        }
      },
      sig.value);
}

double sample(const AttackSignal& sig, double t) {
  return std::visit(
      [t](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, signal::Zero>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, signal::Step>) {
          return t >= s.start_time ? s.amplitude : 0.0;
        } else if constexpr (std::is_same_v<T, signal::Sinusoid>) {
          return s.amplitude * std::sin(s.omega * t + s.phase);
        } else if constexpr (std::is_same_v<T, signal::Exponential>) {
          return t >= s.start_time ? s.gain * std::exp(s.eta * (t - s.start_time)) : 0.0;
        } else {
          throw DomainError("covert signal has filter state; render it through the simulator");
        }
      },
      sig.value);
}

std::optional<AttackSignal> zero_dynamics_attack(const RationalFunction& plant, double gain) {
  if (plant.num().degree() < 1) return std::nullopt;
  std::optional<double> eta;
  for (auto z : poly_roots(plant.num())) {
    if (z.imag() != 0.0 || !(z.real() > 0.0)) continue;
    if (!eta || z.real() > *eta) eta = z.real();
  }
  if (!eta) return std::nullopt;
  return AttackSignal{signal::Exponential{gain, *eta, 0.0}};
}

std::pair<AttackSignal, AttackSignal> covert_pair(const AttackSignal& w_sig, const RationalFunction& plant_model) {
  if (!plant_model.is_proper()) throw DomainError("covert attack: plant model must be proper");
  validate(w_sig);
  auto w = std::make_shared<const AttackSignal>(w_sig);
  return {w_sig, AttackSignal{signal::Covert{std::move(w), plant_model}}};
}

FilteredSignal decompose(const AttackSignal& sig) {
  if (const auto* c = std::get_if<signal::Covert>(&sig.value)) {
    auto inner = decompose(*c->w_component);
    return {-(c->plant_model * inner.filter), std::move(inner.base)};
  }
  return {RationalFunction(1.0), sig};
}

}  // namespace twoctl
