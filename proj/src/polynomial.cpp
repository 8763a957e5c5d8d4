#include "twoctl/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "twoctl/errors.hpp"

namespace twoctl {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::from_roots(std::span<const std::complex<double>> roots, double gain) {
  std::vector<std::complex<double>> c{1.0};
  for (auto r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  std::vector<double> real(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) real[k] = gain * c[k].real();
  return Polynomial(std::move(real));
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::magnitude_bound(std::complex<double> s) const {
  const double r = std::abs(s);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::deflate_linear(double r) const {
  const int n = degree();
  if (n < 1) return {};
  std::vector<double> q(static_cast<std::size_t>(n));
  q[n - 1] = coeffs_[n];
  for (int k = n - 1; k >= 1; --k) q[k - 1] = coeffs_[k] + r * q[k];
  return Polynomial(std::move(q));
}

Polynomial Polynomial::deflate_quadratic(double p, double q) const {
  const int n = degree();
  if (n < 2) return {};
  // p(s) = (s^2 + p s + q) * b(s) + remainder, computed from the top down.
  std::vector<double> b(static_cast<std::size_t>(n - 1), 0.0);
  for (int k = n - 2; k >= 0; --k) {
    const double b1 = k + 1 <= n - 2 ? b[k + 1] : 0.0;
    const double b2 = k + 2 <= n - 2 ? b[k + 2] : 0.0;
    b[k] = coeffs_[k + 2] - p * b1 - q * b2;
  }
  return Polynomial(std::move(b));
}

Polynomial poly_exact_quotient(const Polynomial& p, const Polynomial& divisor) {
  if (divisor.is_zero()) throw DomainError("poly_exact_quotient: zero divisor");
  const int n = p.degree();
  const int m = divisor.degree();
  if (p.is_zero() || n < m) return {};
  Eigen::MatrixXd conv = Eigen::MatrixXd::Zero(n + 1, n - m + 1);
  for (int j = 0; j <= n - m; ++j)
    for (int i = 0; i <= m; ++i) conv(i + j, j) = divisor[static_cast<std::size_t>(i)];
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(p.coeffs().data(), n + 1);
  const Eigen::VectorXd q = conv.colPivHouseholderQr().solve(rhs);
  return Polynomial(std::vector<double>(q.data(), q.data() + q.size()));
}

Polynomial operator+(const Polynomial& x, const Polynomial& y) {
  std::vector<double> c(std::max(x.coeffs_.size(), y.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = x[k] + y[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& x, const Polynomial& y) {
  std::vector<double> c(std::max(x.coeffs_.size(), y.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = x[k] - y[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& x, const Polynomial& y) {
  if (x.is_zero() || y.is_zero()) return {};
  std::vector<double> c(x.coeffs_.size() + y.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j) c[i + j] += x.coeffs_[i] * y.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double k, const Polynomial& x) {
  std::vector<double> c(x.coeffs_);
  for (double& v : c) v *= k;
  return Polynomial(std::move(c));
}

namespace {

// Newton step on p at z; accepted only when it lowers the residual.
template <typename T>
T polish(const Polynomial& p, const Polynomial& dp, T z) {
  for (int it = 0; it < 3; ++it) {
    const T f = p(z);
    const T df = dp(z);
    if (std::abs(df) == 0.0) break;
    const T next = z - f / df;
    if (!(std::abs(p(next)) < std::abs(f))) break;
    z = next;
  }
  return z;
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw DomainError("poly_roots: polynomial must have degree >= 1");

  // Leading zeros at the origin are exact roots.
  int zeros_at_origin = 0;
  while (p[zeros_at_origin] == 0.0) ++zeros_at_origin;
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(zeros_at_origin), 0.0);
  const int m = n - zeros_at_origin;
  if (m == 0) return roots;

  std::vector<double> reduced(p.coeffs().begin() + zeros_at_origin, p.coeffs().end());
  const Polynomial q(reduced);
  const double lead = q.leading();
  if (m == 1) {
    roots.emplace_back(-q[0] / lead, 0.0);
    return roots;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -q[static_cast<std::size_t>(i)] / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw DomainError("poly_roots: eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();

  const Polynomial dq = q.derivative();
  for (int i = 0; i < m; ++i) {
    const std::complex<double> z = ev(i);
    if (z.imag() == 0.0) {
      roots.emplace_back(polish(q, dq, z.real()), 0.0);
    } else if (z.imag() > 0.0) {
      const std::complex<double> zp = polish(q, dq, z);
      roots.push_back(zp);
      roots.push_back(std::conj(zp));
    }
  }
  return roots;
}

double spectral_abscissa(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("spectral_abscissa: zero polynomial");
  if (p.degree() == 0) return -std::numeric_limits<double>::infinity();
  double m = -std::numeric_limits<double>::infinity();
  for (auto r : poly_roots(p)) m = std::max(m, r.real());
  return m;
}

bool poly_is_hurwitz(const Polynomial& p, double margin) {
  return spectral_abscissa(p) < -margin;
}

}  // namespace twoctl
