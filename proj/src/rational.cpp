#include "twoctl/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <optional>

#include "twoctl/errors.hpp"

namespace twoctl {

namespace {

Polynomial trim_leading_noise(const Polynomial& p, double rel) {
  const double scale = p.max_abs_coeff();
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  while (!c.empty() && std::abs(c.back()) <= rel * scale) c.pop_back();
  return Polynomial(std::move(c));
}

void require_finite(const Polynomial& p, const char* what) {
  for (double c : p.coeffs())
    if (!std::isfinite(c)) throw DomainError(std::string("rational function: non-finite coefficient in ") + what);
}

double relative_residual(const Polynomial& p, std::complex<double> s) {
  const double bound = p.magnitude_bound(s);
  return bound == 0.0 ? 0.0 : std::abs(p(s)) / bound;
}

using Roots = std::vector<std::complex<double>>;

std::complex<double> centroid(const Roots& roots) {
  std::complex<double> sum = 0.0;
  for (auto r : roots) sum += r;
  return sum / static_cast<double>(roots.size());
}

double gap(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

// True when p is divisible by the m-fold factor at c up to round-off.
bool divides(Polynomial p, std::complex<double> c, int m, double residual) {
  const bool real = c.imag() == 0.0;
  for (int k = 0; k < m; ++k) {
    if (p.degree() < (real ? 1 : 2) || relative_residual(p, c) >= residual) return false;
    p = real ? p.deflate_linear(c.real()) : p.deflate_quadratic(-2.0 * c.real(), std::norm(c));
  }
  return true;
}

// Matches roots of num and den and collects the shared factor.
class SharedFactor {
 public:
  SharedFactor(const Polynomial& num, const Polynomial& den, const NormalizeTolerances& tol)
      : num_(num), den_(den), tol_(tol), rn_(poly_roots(num)), rd_(poly_roots(den)),
        used_n_(rn_.size(), false), used_d_(rd_.size(), false) {
    match_clusters();
    match_pairs();
  }

  bool empty() const { return factor_.degree() < 1; }
  const Polynomial& factor() const { return factor_; }

 private:
  // Multiple roots: an m-fold factor at a cluster centroid, confirmed by
  // division of both polynomials.
  void match_clusters() {
    for (std::size_t i = 0; i < rd_.size(); ++i) {
      if (used_d_[i] || rd_[i].imag() < 0.0) continue;
      const auto dn = nearby(rd_, used_d_, rd_[i]);
      const auto nn = nearby(rn_, used_n_, rd_[i]);
      for (int m = static_cast<int>(std::min(dn.size(), nn.size())); m >= 2; --m) {
        bool matched = false;
        for (auto c : {centroid(pick(rd_, dn)), centroid(pick(rn_, nn))}) {
          if (std::abs(c.imag()) <= tol_.cluster_distance * (1.0 + std::abs(c))) c = c.real();
          if (!divides(num_, c, m, tol_.cluster_residual) || !divides(den_, c, m, tol_.cluster_residual)) continue;
          for (int k = 0; k < m; ++k) {
            take(rn_, used_n_, c);
            take(rd_, used_d_, c);
            add(c);
          }
          matched = true;
          break;
        }
        if (matched) break;
      }
    }
  }

  void match_pairs() {
    struct Candidate {
      double distance;
      std::size_t n, d;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < rn_.size(); ++i)
      for (std::size_t j = 0; j < rd_.size(); ++j) {
        if (rd_[j].imag() < 0.0) continue;
        auto zn = rn_[i].imag() < 0.0 ? std::conj(rn_[i]) : rn_[i];
        const double d = gap(zn, rd_[j]);
        if (d < tol_.cancel_distance) candidates.push_back({d, i, j});
      }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
    for (const auto& c : candidates) {
      if (used_n_[c.n] || used_d_[c.d]) continue;
      const auto zn = rn_[c.n].imag() < 0.0 ? std::conj(rn_[c.n]) : rn_[c.n];
      const auto zd = rd_[c.d];
      const bool real = zn.imag() == 0.0 || zd.imag() == 0.0;
      if (real) {
        used_n_[c.n] = used_d_[c.d] = true;
        add(0.5 * (zn.real() + zd.real()));
        continue;
      }
      // both complex: the conjugates must be available as well
      const auto cn = find(rn_, used_n_, std::conj(zn), c.n);
      const auto cd = find(rd_, used_d_, std::conj(zd), c.d);
      if (!cn || !cd) continue;
      used_n_[c.n] = used_d_[c.d] = used_n_[*cn] = used_d_[*cd] = true;
      add(0.5 * (zn + zd));
    }
  }

  std::vector<std::size_t> nearby(const Roots& roots, const std::vector<bool>& used, std::complex<double> z) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < roots.size(); ++k)
      if (!used[k] && gap(roots[k], z) < tol_.cluster_distance) out.push_back(k);
    return out;
  }

  static Roots pick(const Roots& roots, const std::vector<std::size_t>& idx) {
    Roots out;
    for (auto k : idx) out.push_back(roots[k]);
    return out;
  }

  static std::optional<std::size_t> find(const Roots& roots, const std::vector<bool>& used, std::complex<double> z,
                                         std::size_t skip) {
    std::optional<std::size_t> best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (used[k] || k == skip) continue;
      if (const double g = std::abs(roots[k] - z); g < best_gap) {
        best_gap = g;
        best = k;
      }
    }
    return best;
  }

  // Marks the closest unused root(s) accounted for by one factor at c.
  void take(const Roots& roots, std::vector<bool>& used, std::complex<double> c) const {
    const auto k = find(roots, used, c, roots.size());
    if (k) used[*k] = true;
    if (c.imag() != 0.0) {
      const auto kc = find(roots, used, std::conj(c), roots.size());
      if (kc) used[*kc] = true;
    }
  }

  void add(std::complex<double> c) {
    factor_ = factor_ * (c.imag() == 0.0 ? Polynomial{-c.real(), 1.0} : Polynomial{std::norm(c), -2.0 * c.real(), 1.0});
  }

  const Polynomial& num_;
  const Polynomial& den_;
  const NormalizeTolerances& tol_;
  Roots rn_, rd_;
  std::vector<bool> used_n_, used_d_;
  Polynomial factor_{1.0};
};

// Divides the factor shared by num and den out of both.
void cancel_common(Polynomial& num, Polynomial& den, const NormalizeTolerances& tol) {
  while (num.degree() >= 1 && den.degree() >= 1) {
    const SharedFactor shared(num, den, tol);
    if (shared.empty()) break;
    // a fully shared side is its own exact divisor
    Polynomial divisor = shared.factor();
    if (divisor.degree() == den.degree()) divisor = (1.0 / den.leading()) * den;
    else if (divisor.degree() == num.degree()) divisor = (1.0 / num.leading()) * num;
    num = poly_exact_quotient(num, divisor);
    den = poly_exact_quotient(den, divisor);
  }
}

}  // namespace

RationalFunction::RationalFunction(double c) : num_({c}), den_({1.0}) {
  if (!std::isfinite(c)) throw DomainError("rational function: non-finite constant");
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  *this = rf_normalize(num, den);
}

RationalFunction rf_normalize(const Polynomial& num_in, const Polynomial& den_in,
                              const NormalizeTolerances& tol) {
  require_finite(num_in, "numerator");
  require_finite(den_in, "denominator");
  if (den_in.is_zero()) throw DomainError("rational function: denominator is identically zero");

  Polynomial den = trim_leading_noise(den_in, tol.leading_noise);
  Polynomial num = trim_leading_noise(num_in, tol.leading_noise);
  if (num.is_zero() || num.max_abs_coeff() <= tol.zero_snap * den.max_abs_coeff())
    return RationalFunction(RationalFunction::Canonical{}, Polynomial{}, Polynomial{1.0});

  cancel_common(num, den, tol);

  const double lead = den.leading();
  return RationalFunction(RationalFunction::Canonical{}, (1.0 / lead) * num, (1.0 / lead) * den);
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.den() == y.den()) return {x.num() + y.num(), x.den()};
  // over the least common multiple of the denominators
  Polynomial x_only = x.den();
  Polynomial y_only = y.den();
  cancel_common(x_only, y_only, {});
  return {x.num() * y_only + y.num() * x_only, x.den() * y_only};
}

RationalFunction operator-(const RationalFunction& x) {
  if (x.is_zero()) return x;
  return {-x.num(), x.den()};
}

RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) { return x + (-y); }

RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
  if (x.is_zero() || y.is_zero()) return {};
  Polynomial xn = x.num(), yd = y.den(), yn = y.num(), xd = x.den();
  cancel_common(xn, yd, {});
  cancel_common(yn, xd, {});
  return {xn * yn, xd * yd};
}

RationalFunction inv(const RationalFunction& x) {
  if (x.is_zero()) throw DomainError("rational function: inverse of the zero function");
  return {x.den(), x.num()};
}

RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
  if (y.is_zero()) throw DomainError("rational function: division by the zero function");
  if (x.is_zero()) return {};
  return x * inv(y);
}

RationalFunction rf_arith(const RationalFunction& x, const RationalFunction& y, RfOp op) {
  switch (op) {
    case RfOp::add: return x + y;
    case RfOp::sub: return x - y;
    case RfOp::mul: return x * y;
    case RfOp::div: return x / y;
    case RfOp::neg: return -x;
    case RfOp::inv: return inv(x);
  }
  throw DomainError("rf_arith: unknown operation");
}

std::complex<double> rf_eval(const RationalFunction& x, std::complex<double> s0) {
  const auto d = x.den()(s0);
  if (x.den().degree() >= 1 && std::abs(d) <= 1e-13 * x.den().magnitude_bound(s0)) {
    std::complex<double> pole = s0;
    double nearest = std::numeric_limits<double>::infinity();
    for (auto r : poly_roots(x.den())) {
      if (std::abs(r - s0) < nearest) {
        nearest = std::abs(r - s0);
        pole = r;
      }
    }
    throw PoleEvaluationError("rf_eval: evaluation at a pole", pole);
  }
  return x.num()(s0) / d;
}

double rf_distance(const RationalFunction& x, const RationalFunction& y) {
  double m = 0.0;
  const auto span_max = [&](const Polynomial& a, const Polynomial& b) {
    const auto n = static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1);
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  };
  span_max(x.num(), y.num());
  span_max(x.den(), y.den());
  return m;
}

bool rf_equal(const RationalFunction& x, const RationalFunction& y, double tol) {
  return rf_distance(x, y) < tol;
}

}  // namespace twoctl

namespace twoctl {

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  char buf[64];
  for (int k = 0; k <= p.degree(); ++k) {
    const double c = p[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (k == 0 || mag != 1.0) {
      std::snprintf(buf, sizeof buf, "%.10g", mag);
      out += buf;
      if (k > 0) out += " ";
    }
    if (k == 1) out += "s";
    if (k > 1) out += "s^" + std::to_string(k);
  }
  return out;
}

std::string to_string(const RationalFunction& x) {
  if (x.den().degree() == 0) return to_string(x.num());
  return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

}  // namespace twoctl
