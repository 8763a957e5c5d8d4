#pragma once

#include <array>
#include <string_view>

#include "twoctl/coding.hpp"
#include "twoctl/rational.hpp"

namespace twoctl {

/// Maps from reference r and attacks w (forward channel), z (feedback
/// channel) to plant input u_bar and plant output y_bar.
struct SixTransferFunctions {
  RationalFunction t_ur, t_uw, t_uz;
  RationalFunction t_yr, t_yw, t_yz;

  bool operator==(const SixTransferFunctions&) const = default;

  static constexpr std::array<std::string_view, 6> names{"t_ur", "t_uw", "t_uz",
                                                         "t_yr", "t_yw", "t_yz"};
  const RationalFunction& operator[](std::string_view name) const;
  RationalFunction& operator[](std::string_view name);
};

/// Closed-form maps for every topology, all sharing the loop sensitivity
/// S = 1/(1 + K P):
///
///   T_ur = K S,  T_uw = g_w S,  T_uz = g_z S,  T_y* = P T_u*
///
/// with (g_w, g_z) = (1, -K) uncoded, (1/alpha, -K/beta) one-way, and
/// ((1 + cK)/a, (b - (ad - bc) K)/a) two-way.
///
/// Throws DegenerateLoopError when 1 + K P vanishes identically.
SixTransferFunctions closed_form_tfs(const LoopModel& model);

/// den(P) den(K) + num(P) num(K) from the canonical P and K.
Polynomial characteristic_polynomial(const LoopModel& model);

/// True iff the characteristic polynomial is Hurwitz (so no unstable mode
/// was cancelled between P, K and 1 + KP) and all six closed-loop maps are
/// proper with Hurwitz denominators.
bool is_internally_stable(const LoopModel& model, double margin = 1e-9);

}  // namespace twoctl
