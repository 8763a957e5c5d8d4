#include "twoctl/closedloop.hpp"

#include <cmath>
#include <stdexcept>

#include "twoctl/errors.hpp"

namespace twoctl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void validate(const CodingScheme& coding) {
  std::visit(overloaded{
                 [](const NoCoding&) {},
                 [](const OneWay& m) {
                   if (!std::isfinite(m.alpha) || !std::isfinite(m.beta))
                     throw DomainError("one-way coding: alpha and beta must be finite");
                   if (m.alpha == 0.0 || m.beta == 0.0)
                     throw DomainError("one-way coding: alpha and beta must be nonzero");
                 },
                 [](const TwoWay& m) {
                   if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) ||
                       !std::isfinite(m.d) || !std::isfinite(m.det()))
                     throw DomainError("two-way coding: entries and ad - bc must be finite");
                   if (m.a * m.d == 0.0) throw DomainError("two-way coding: requires ad != 0");
                   if (m.det() == 0.0) throw DomainError("two-way coding: requires ad - bc != 0");
                 },
             },
             coding);
}

bool is_valid(const CodingScheme& coding) {
  try {
    validate(coding);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

CodingInverse coding_inverse(const TwoWay& m) {
  validate(CodingScheme{m});
  const double det = m.det();
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

std::string coding_name(const CodingScheme& coding) {
  return std::visit(overloaded{
                        [](const NoCoding&) { return std::string("none"); },
                        [](const OneWay&) { return std::string("one_way"); },
                        [](const TwoWay&) { return std::string("two_way"); },
                    },
                    coding);
}

void validate(const LoopModel& model) {
  if (!model.plant.is_proper()) throw DomainError("loop model: plant P must be proper");
  if (!model.controller.is_proper()) throw DomainError("loop model: controller K must be proper");
  validate(model.coding);
}

const RationalFunction& SixTransferFunctions::operator[](std::string_view name) const {
  return const_cast<SixTransferFunctions&>(*this)[name];
}

RationalFunction& SixTransferFunctions::operator[](std::string_view name) {
  if (name == "t_ur") return t_ur;
  if (name == "t_uw") return t_uw;
  if (name == "t_uz") return t_uz;
  if (name == "t_yr") return t_yr;
  if (name == "t_yw") return t_yw;
  if (name == "t_yz") return t_yz;
  throw std::out_of_range("unknown transfer function name: " + std::string(name));
}

SixTransferFunctions closed_form_tfs(const LoopModel& model) {
  validate(model);
  const RationalFunction& p = model.plant;
  const RationalFunction& k = model.controller;

  const RationalFunction return_difference = RationalFunction(1.0) + k * p;
  if (return_difference.is_zero()) throw DegenerateLoopError("closed loop: 1 + K P is identically zero");
  const RationalFunction sensitivity = inv(return_difference);

  const auto [gain_w, gain_z] = std::visit(
      overloaded{
          [&](const NoCoding&) { return std::pair{RationalFunction(1.0), -k}; },
          [&](const OneWay& m) {
            return std::pair{RationalFunction(1.0 / m.alpha), RationalFunction(-1.0 / m.beta) * k};
          },
          [&](const TwoWay& m) {
            const RationalFunction inv_a(1.0 / m.a);
            return std::pair{(RationalFunction(1.0) + RationalFunction(m.c) * k) * inv_a,
                             (RationalFunction(m.b) - RationalFunction(m.det()) * k) * inv_a};
          },
      },
      model.coding);

  SixTransferFunctions out;
  out.t_ur = k * sensitivity;
  out.t_uw = gain_w * sensitivity;
  out.t_uz = gain_z * sensitivity;
  out.t_yr = p * out.t_ur;
  out.t_yw = p * out.t_uw;
  out.t_yz = p * out.t_uz;
  return out;
}

Polynomial characteristic_polynomial(const LoopModel& model) {
  const auto& p = model.plant;
  const auto& k = model.controller;
  return p.den() * k.den() + p.num() * k.num();
}

bool is_internally_stable(const LoopModel& model, double margin) {
  validate(model);
  const Polynomial chi = characteristic_polynomial(model);
  if (chi.is_zero() || !poly_is_hurwitz(chi, margin)) return false;
  SixTransferFunctions tfs;
  try {
    tfs = closed_form_tfs(model);
  } catch (const DegenerateLoopError&) {
    return false;
  }
  for (auto name : SixTransferFunctions::names) {
    const auto& t = tfs[name];
    if (t.is_zero()) continue;
    if (!t.is_proper() || !poly_is_hurwitz(t.den(), margin)) return false;
  }
  return true;
}

}  // namespace twoctl
