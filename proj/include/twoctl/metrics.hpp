#pragma once

#include "twoctl/kernels.hpp"
#include "twoctl/rational.hpp"

namespace twoctl {

struct HinfOptions {
  double omega_min = 1e-3;
  double omega_max = 1e4;
  std::size_t grid_points = 2000;
  /// Golden-section stops once the bracket is this small relative to its centre.
  double refine_rel_tol = 1e-9;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// sup_w |tf(jw)| over a log grid plus w = 0 and the w -> inf limit,
/// refined by golden-section search around the grid maximum. Exactly 0 for
/// the zero function. Throws DomainError for unstable or improper tf.
double hinf_norm(const RationalFunction& tf, const HinfOptions& options = {});

struct BodeOptions {
  double abs_tol = 1e-6;
  /// Width excluded around imaginary-axis zeros, where ln|tf| is singular.
  double exclusion_radius = 1e-12;
  int max_depth = 48;
};

/// (1/pi) * integral_0^omega_max ln|tf(jw)| dw, i.e. the two-sided Bode
/// integral over [-omega_max, omega_max] divided by 2 pi. Returns -inf for
/// the zero function. Uses adaptive Simpson quadrature on panels split at
/// decades and at the moduli of poles and zeros. Throws DomainError for unstable tf or
/// omega_max <= 0.
double bode_integral(const RationalFunction& tf, double omega_max = 1e4, const BodeOptions& options = {});

}  // namespace twoctl
