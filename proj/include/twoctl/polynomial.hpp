#pragma once

#include <complex>
#include <span>
#include <vector>

namespace twoctl {

/// Dense real polynomial in s, coefficients in ascending degree.
///
/// Canonical form: no trailing (highest-degree) zero coefficients, so the
/// zero polynomial is the empty coefficient vector and has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending)
      : Polynomial(std::vector<double>(ascending)) {}

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// Monic polynomial with the given roots; complex roots must come in
  /// conjugate pairs (only the real part of the expanded product is kept).
  static Polynomial from_roots(std::span<const std::complex<double>> roots, double gain = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }
  /// Coefficient of s^k; zero beyond the degree.
  double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs_coeff() const;

  double operator()(double s) const;
  std::complex<double> operator()(std::complex<double> s) const;
  /// sum |c_k| |s|^k, the scale against which a residual p(s) is judged.
  double magnitude_bound(std::complex<double> s) const;

  Polynomial derivative() const;
  /// Quotient of division by (s - r); the remainder is dropped.
  Polynomial deflate_linear(double r) const;
  /// Quotient of division by s^2 + p s + q; the remainder is dropped.
  Polynomial deflate_quadratic(double p, double q) const;

  friend Polynomial operator+(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator-(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator*(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator*(double k, const Polynomial& x);
  friend Polynomial operator-(const Polynomial& x) { return -1.0 * x; }

  bool operator==(const Polynomial&) const = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// All complex roots with multiplicity, from the companion-matrix
/// eigenvalues followed by a guarded Newton polish. Real roots are returned
/// with an exactly-zero imaginary part and complex roots in exact conjugate
/// pairs. Throws DomainError for constant or zero polynomials.
std::vector<std::complex<double>> poly_roots(const Polynomial& p);

/// Largest real part among the roots; -inf for a nonzero constant.
double spectral_abscissa(const Polynomial& p);

/// Quotient of p by a divisor that divides it up to round-off, computed as
/// the least-squares solution of divisor * q = p.
Polynomial poly_exact_quotient(const Polynomial& p, const Polynomial& divisor);

/// True iff every root has real part < -margin. Nonzero constants have no
/// roots and count as Hurwitz.
bool poly_is_hurwitz(const Polynomial& p, double margin = 1e-9);

}  // namespace twoctl
