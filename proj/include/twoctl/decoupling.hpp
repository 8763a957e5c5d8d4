#pragma once

#include <optional>
#include <string>
#include <variant>

#include "twoctl/closedloop.hpp"
#include "twoctl/kernels.hpp"

namespace twoctl {

enum class DecouplingTarget { ForwardAttackW, FeedbackAttackZ, Both };

/// Two-tier thresholds on the largest canonical numerator coefficient:
/// below `zero` a map counts as identically zero, at or above `nonzero` it
/// counts as present. Values in between are neither.
struct Tolerances {
  double zero = 1e-9;
  double nonzero = 1e-6;
};

bool is_zero_map(const RationalFunction& tf, const Tolerances& tol = {});
bool is_nonzero_map(const RationalFunction& tf, const Tolerances& tol = {});

/// An attack is decoupled when both of its maps (to plant input and plant
/// output) vanish while both reference maps stay nonzero.
bool check_decoupled(const SixTransferFunctions& tfs, DecouplingTarget target, const Tolerances& tol = {});

/// Signed log grid 1e-3..1e3 with 400 points per sign.
struct GainSearch {
  double min_abs = 1e-3;
  double max_abs = 1e3;
  std::size_t points_per_sign = 400;
  /// Closed-loop spectral abscissa must be below -margin.
  double margin = 1e-6;
  int bisection_steps = 60;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Nonzero static gain K making den(P) + K num(P) Hurwitz, preferring the
/// smallest |K| (then positive sign). The smallest stabilizing grid gain is
/// refined by bisection toward the grid neighbour that does not stabilize.
/// Returns nullopt when no grid point stabilizes.
std::optional<double> find_static_stabilizing_gain(const RationalFunction& plant,
                                                   const GainSearch& search = {});

/// Free entries of the coding matrix. For the forward-channel design b is
/// free (c is set to -1/K); for the feedback-channel design c is free (b is
/// set so that b = (ad - bc) K). `gain` pins K instead of searching; it must
/// stabilize the plant.
struct FreeParams {
  double a = 1.0;
  double d = 1.0;
  double b = 1.0;
  double c = 0.0;
  std::optional<double> gain;
};

struct Feasible {
  double gain;
  TwoWay coding;
  bool operator==(const Feasible&) const = default;
};

struct Infeasible {
  std::string reason;
  bool operator==(const Infeasible&) const = default;
};

using DesignResult = std::variant<Feasible, Infeasible>;

inline bool is_feasible(const DesignResult& r) { return std::holds_alternative<Feasible>(r); }

/// Co-designs a static controller gain and a two-way coding matrix so that
/// the targeted attack is decoupled. Feasible results are re-verified
/// through closed_form_tfs and check_decoupled before being returned.
/// Throws DomainError when a d == 0.
DesignResult design_decoupling(const RationalFunction& plant, DecouplingTarget target,
                               const FreeParams& free = {}, const GainSearch& search = {},
                               const Tolerances& tol = {});

/// Confirms that decoupling w and z together has no solution: substituting
/// c = -1/K into b = (ad - bc) K leaves the constraint a d K = 0, which
/// contradicts ad != 0 and K != 0. Returns false only when the residual
/// a d K is numerically degenerate (underflows to zero or is not finite).
/// Throws DomainError for an invalid coding or K == 0.
bool verify_impossibility(double a, double b, double c, double d, double gain);

std::string to_string(DecouplingTarget target);

}  // namespace twoctl
