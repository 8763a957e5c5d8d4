#include "twoctl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "twoctl/errors.hpp"

namespace twoctl {

namespace {

void require_stable(const RationalFunction& tf, const char* who) {
  if (!poly_is_hurwitz(tf.den(), 1e-9))
    throw DomainError(std::string(who) + ": transfer function " + to_string(tf) + " is not stable");
}

double magnitude(const RationalFunction& tf, double omega) {
  const std::complex<double> s(0.0, omega);
  return std::abs(tf.num()(s)) / std::abs(tf.den()(s));
}

double golden_max(const RationalFunction& tf, double lo, double hi, double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = magnitude(tf, x1);
  double f2 = magnitude(tf, x2);
  for (int it = 0; it < 200 && (hi - lo) > rel_tol * 0.5 * (hi + lo); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = magnitude(tf, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = magnitude(tf, x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

double hinf_norm(const RationalFunction& tf, const HinfOptions& options) {
  if (tf.is_zero()) return 0.0;
  if (!tf.is_proper()) throw DomainError("hinf_norm: improper transfer function has unbounded gain");
  require_stable(tf, "hinf_norm");

  std::vector<double> omegas{0.0};
  const auto grid = kernels::logspace(options.omega_min, options.omega_max, options.grid_points);
  omegas.insert(omegas.end(), grid.begin(), grid.end());
  const auto mags = kernels::magnitude_on_grid(tf, omegas, options.exec);
  const std::size_t i = kernels::first_argmax(mags);
  double peak = mags[i];

  // High-frequency limit is the feedthrough (den is monic).
  if (tf.relative_degree() == 0) peak = std::max(peak, std::abs(tf.num().leading()));

  if (i > 0 && i + 1 < omegas.size() && mags[i] >= peak)
    peak = std::max(peak, golden_max(tf, omegas[i - 1], omegas[i + 1], options.refine_rel_tol));
  return peak;
}

namespace {

struct Simpson {
  const RationalFunction& tf;
  int max_depth;

  double f(double w) const { return std::log(magnitude(tf, w)); }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth >= max_depth || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double integrate(double a, double b, double tol) const {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, 0);
  }
};

}  // namespace

double bode_integral(const RationalFunction& tf, double omega_max, const BodeOptions& options) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw DomainError("bode_integral: omega_max must be positive");
  if (tf.is_zero()) return -std::numeric_limits<double>::infinity();
  require_stable(tf, "bode_integral");

  // Panel boundaries: decades, plus |root| and Im(root) of every pole and zero.
  std::vector<double> breaks{0.0, omega_max};
  for (double w = 1e-3; w < omega_max; w *= 10.0) breaks.push_back(w);
  std::vector<double> axis_zeros;
  const auto add_root_breaks = [&](const Polynomial& p, bool numerator) {
    if (p.degree() < 1) return;
    for (auto r : poly_roots(p)) {
      for (double w : {std::abs(r), std::abs(r.imag())})
        if (w > 0.0 && w < omega_max) breaks.push_back(w);
      if (numerator && std::abs(r.real()) <= 1e-9 * (1.0 + std::abs(r)) && std::abs(r.imag()) < omega_max)
        axis_zeros.push_back(std::abs(r.imag()));
    }
  };
  add_root_breaks(tf.num(), true);
  add_root_breaks(tf.den(), false);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto near_axis_zero = [&](double w) {
    for (double z : axis_zeros)
      if (std::abs(w - z) <= options.exclusion_radius) return true;
    return false;
  };

  const Simpson simpson{tf, options.max_depth};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    if (near_axis_zero(a)) a += options.exclusion_radius;
    if (near_axis_zero(b)) b -= options.exclusion_radius;
    if (!(b > a)) continue;
    const double panel_tol = options.abs_tol * (b - a) / omega_max;
    total += simpson.integrate(a, b, std::max(panel_tol, 1e-15));
  }
  return total / std::numbers::pi;
}

}  // namespace twoctl
