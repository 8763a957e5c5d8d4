#pragma once

#include <complex>

#include "twoctl/polynomial.hpp"

namespace twoctl {

/// Tolerances used when bringing a ratio of polynomials to canonical form.
struct NormalizeTolerances {
  /// Leading coefficients at or below this fraction of the largest
  /// coefficient are treated as round-off and dropped.
  double leading_noise = 1e-12;
  /// Numerators whose largest coefficient is at or below this fraction of
  /// the (monic) denominator's largest coefficient collapse to zero.
  double zero_snap = 1e-12;
  /// Root pairs closer than cancel_distance * (1 + |root|) cancel.
  double cancel_distance = 1e-7;
  /// Roots within cluster_distance * (1 + |root|) of each other form a
  /// cluster; an m-fold factor at its centroid cancels when it divides both
  /// polynomials with relative residual below cluster_residual.
  double cluster_distance = 1e-3;
  double cluster_residual = 1e-10;
};

/// Real rational function num(s)/den(s), always held in canonical form:
/// denominator monic, no common roots within tolerance, and the zero
/// function represented as 0/1.
class RationalFunction {
 public:
  /// The zero function.
  RationalFunction() : den_({1.0}) {}
  /// Constant map.
  RationalFunction(double c);  // NOLINT(google-explicit-constructor)
  /// Normalizes num/den; throws DomainError if den is identically zero.
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
  /// deg num <= deg den.
  bool is_proper() const { return num_.degree() <= den_.degree(); }
  /// deg den - deg num; meaningless for the zero function.
  int relative_degree() const { return den_.degree() - num_.degree(); }

  bool operator==(const RationalFunction&) const = default;

 private:
  struct Canonical {};
  RationalFunction(Canonical, Polynomial num, Polynomial den)
      : num_(std::move(num)), den_(std::move(den)) {}
  friend RationalFunction rf_normalize(const Polynomial&, const Polynomial&,
                                       const NormalizeTolerances&);

  Polynomial num_;
  Polynomial den_;
};

/// Canonical form of num/den: round-off trimming, zero snapping, removal of
/// the shared root factor by exact division, monic denominator. Idempotent.
RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den,
                              const NormalizeTolerances& tol = {});
inline RationalFunction rf_normalize(const RationalFunction& x,
                                     const NormalizeTolerances& tol = {}) {
  return rf_normalize(x.num(), x.den(), tol);
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
RationalFunction operator-(const RationalFunction& x, const RationalFunction& y);
RationalFunction operator*(const RationalFunction& x, const RationalFunction& y);
/// Throws DomainError when y is the zero function.
RationalFunction operator/(const RationalFunction& x, const RationalFunction& y);
RationalFunction operator-(const RationalFunction& x);
RationalFunction inv(const RationalFunction& x);

enum class RfOp { add, sub, mul, div, neg, inv };
/// Dispatching form of the arithmetic above; `y` is ignored by neg and inv.
RationalFunction rf_arith(const RationalFunction& x, const RationalFunction& y, RfOp op);

/// num(s0)/den(s0). Throws PoleEvaluationError when s0 sits on a pole
/// (|den(s0)| within round-off of zero).
std::complex<double> rf_eval(const RationalFunction& x, std::complex<double> s0);

/// Coefficient-wise comparison of canonical forms; coefficients beyond a
/// polynomial's degree count as zero, so degrees agree up to terms below tol.
bool rf_equal(const RationalFunction& x, const RationalFunction& y, double tol = 1e-9);

/// Largest absolute coefficient of the difference of canonical forms.
double rf_distance(const RationalFunction& x, const RationalFunction& y);

}  // namespace twoctl

#include <string>

namespace twoctl {

/// Human-readable forms, e.g. "2 + 3 s + s^2" and "(s + 2)/(s^2 + 3 s + 2)".
std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& x);

}  // namespace twoctl
