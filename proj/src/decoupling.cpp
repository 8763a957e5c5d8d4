#include "twoctl/decoupling.hpp"

#include <algorithm>
#include <cmath>

#include "twoctl/errors.hpp"

namespace twoctl {

namespace {

double numerator_scale(const RationalFunction& tf) { return tf.num().max_abs_coeff(); }

double closed_loop_abscissa(const RationalFunction& plant, double k) {
  return kernels::static_gain_abscissa(plant, k);
}

}  // namespace

bool is_zero_map(const RationalFunction& tf, const Tolerances& tol) {
  return numerator_scale(tf) < tol.zero;
}

bool is_nonzero_map(const RationalFunction& tf, const Tolerances& tol) {
  return numerator_scale(tf) >= tol.nonzero;
}

bool check_decoupled(const SixTransferFunctions& tfs, DecouplingTarget target, const Tolerances& tol) {
  const bool reference_alive = is_nonzero_map(tfs.t_ur, tol) && is_nonzero_map(tfs.t_yr, tol);
  if (!reference_alive) return false;
  const bool w_cut = is_zero_map(tfs.t_uw, tol) && is_zero_map(tfs.t_yw, tol);
  const bool z_cut = is_zero_map(tfs.t_uz, tol) && is_zero_map(tfs.t_yz, tol);
  switch (target) {
    case DecouplingTarget::ForwardAttackW: return w_cut;
    case DecouplingTarget::FeedbackAttackZ: return z_cut;
    case DecouplingTarget::Both: return w_cut && z_cut;
  }
  return false;
}

std::optional<double> find_static_stabilizing_gain(const RationalFunction& plant, const GainSearch& search) {
  if (!plant.is_proper()) throw DomainError("static gain search: plant must be proper");
  if (plant.is_zero()) return std::nullopt;

  const auto magnitudes = kernels::logspace(search.min_abs, search.max_abs, search.points_per_sign);
  // Candidates ordered by |K| ascending, positive before negative.
  std::vector<double> gains;
  gains.reserve(2 * magnitudes.size());
  for (double g : magnitudes) {
    gains.push_back(g);
    gains.push_back(-g);
  }
  const auto abscissae = kernels::static_gain_abscissae(plant, gains, search.exec);

  std::size_t chosen = gains.size();
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (abscissae[i] < -search.margin) {
      chosen = i;
      break;
    }
  }
  if (chosen == gains.size()) return std::nullopt;

  double stable = gains[chosen];
  // The same-sign grid point one step closer to zero.
  if (chosen < 2) return stable;
  double unstable = gains[chosen - 2];
  for (int it = 0; it < search.bisection_steps; ++it) {
    const double mid = std::copysign(std::sqrt(std::abs(stable) * std::abs(unstable)), stable);
    if (mid == stable || mid == unstable) break;
    if (closed_loop_abscissa(plant, mid) < -search.margin) stable = mid;
    else unstable = mid;
  }
  return stable;
}

namespace {

Infeasible verify(const RationalFunction& plant, double gain, const TwoWay& m, DecouplingTarget target,
                  const Tolerances& tol, bool& ok) {
  ok = false;
  if (!is_valid(CodingScheme{m})) return {"designed coding matrix violates ad != 0, ad - bc != 0"};
  const LoopModel model{plant, RationalFunction(gain), m};
  if (!is_internally_stable(model)) return {"designed loop is not internally stable"};
  if (!check_decoupled(closed_form_tfs(model), target, tol))
    return {"verification failed: attack maps not identically zero"};
  ok = true;
  return {};
}

}  // namespace

DesignResult design_decoupling(const RationalFunction& plant, DecouplingTarget target, const FreeParams& free,
                               const GainSearch& search, const Tolerances& tol) {
  if (free.a * free.d == 0.0 || !std::isfinite(free.a * free.d))
    throw DomainError("design: free parameters must satisfy a d != 0");
  if (target == DecouplingTarget::Both)
    return Infeasible{"adK = 0 required: w and z cannot be decoupled simultaneously"};

  double gain;
  if (free.gain) {
    gain = *free.gain;
    if (gain == 0.0 || !std::isfinite(gain)) return Infeasible{"gain must be finite and nonzero"};
    if (!(closed_loop_abscissa(plant, gain) < -search.margin))
      return Infeasible{"given gain does not stabilize the plant"};
  } else {
    const auto found = find_static_stabilizing_gain(plant, search);
    if (!found) return Infeasible{"no static stabilizing gain"};
    gain = *found;
  }

  const double a = free.a, d = free.d;
  TwoWay m;
  if (target == DecouplingTarget::ForwardAttackW) {
    // c = -1/K kills 1 + cK.
    double b = free.b;
    const double c = -1.0 / gain;
    if (a * d - b * c == 0.0) b += 1.0;
    m = TwoWay{a, b, c, d};
  } else {
    // b (1 + cK) = a d K.
    double c = free.c;
    if (1.0 + c * gain == 0.0) c += 1.0;
    if (1.0 + c * gain == 0.0) return Infeasible{"1 + cK = 0 for every admissible c"};
    const double b = a * d * gain / (1.0 + c * gain);
    m = TwoWay{a, b, c, d};
  }

  bool ok = false;
  auto failure = verify(plant, gain, m, target, tol, ok);
  if (!ok) return failure;
  return Feasible{gain, m};
}

bool verify_impossibility(double a, double b, double c, double d, double gain) {
  validate(CodingScheme{TwoWay{a, b, c, d}});
  if (gain == 0.0 || !std::isfinite(gain)) throw DomainError("verify_impossibility: gain must be finite and nonzero");
  // With c = -1/K: b = (ad - bc) K = adK - bcK = adK + b, so adK must vanish.
  const double c_w = -1.0 / gain;
  const double residual = (a * d - b * c_w) * gain - b;  // equals a d K
  const double direct = a * d * gain;
  if (!std::isfinite(residual) || !std::isfinite(direct) || direct == 0.0) return false;
  const double scale = std::abs(direct) + std::abs(b);
  return std::abs(residual - direct) <= 1e-12 * scale && residual != 0.0;
}

std::string to_string(DecouplingTarget target) {
  switch (target) {
    case DecouplingTarget::ForwardAttackW: return "w";
    case DecouplingTarget::FeedbackAttackZ: return "z";
    case DecouplingTarget::Both: return "both";
  }
  return "?";
}

}  // namespace twoctl
