#include "twoctl/blockdiagram.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "twoctl/errors.hpp"

namespace twoctl {

SignalGraph::SignalGraph(std::vector<std::string> signals, std::vector<std::string> exogenous,
                         std::vector<Equation> equations)
    : signals_(std::move(signals)), exogenous_(std::move(exogenous)), equations_(std::move(equations)) {
  const std::set<std::string> declared(signals_.begin(), signals_.end());
  if (declared.size() != signals_.size()) throw DomainError("signal graph: duplicate signal names");
  for (const auto& e : exogenous_)
    if (!declared.count(e)) throw DomainError("signal graph: undeclared exogenous signal " + e);

  std::set<std::string> defined;
  for (const auto& eq : equations_) {
    if (!declared.count(eq.target)) throw DomainError("signal graph: undeclared signal " + eq.target);
    if (is_exogenous(eq.target)) throw DomainError("signal graph: exogenous signal " + eq.target + " has an equation");
    if (!defined.insert(eq.target).second)
      throw DomainError("signal graph: signal " + eq.target + " defined twice");
    for (const auto& t : eq.terms)
      if (!declared.count(t.source)) throw DomainError("signal graph: undeclared signal " + t.source);
  }
  if (defined.size() + exogenous_.size() != signals_.size())
    throw DomainError("signal graph: every non-exogenous signal needs exactly one equation");
}

bool SignalGraph::is_exogenous(const std::string& name) const {
  return std::find(exogenous_.begin(), exogenous_.end(), name) != exogenous_.end();
}

std::vector<std::string> SignalGraph::unknowns() const {
  std::vector<std::string> out;
  out.reserve(equations_.size());
  for (const auto& eq : equations_) out.push_back(eq.target);
  return out;
}

const Equation& SignalGraph::equation_for(const std::string& target) const {
  for (const auto& eq : equations_)
    if (eq.target == target) return eq;
  throw DomainError("signal graph: no equation for " + target);
}

SignalGraph SignalGraph::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != equations_.size()) throw DomainError("signal graph: permutation size mismatch");
  std::vector<Equation> eqs;
  eqs.reserve(order.size());
  for (auto i : order) eqs.push_back(equations_.at(i));
  return SignalGraph(signals_, exogenous_, std::move(eqs));
}

std::string SignalGraph::to_string() const {
  std::ostringstream os;
  for (const auto& eq : equations_) {
    os << eq.target << " =";
    bool first = true;
    for (const auto& t : eq.terms) {
      os << (first ? " " : " + ") << "[" << twoctl::to_string(t.gain) << "]*" << t.source;
      first = false;
    }
    if (first) os << " 0";
    os << '\n';
  }
  return os.str();
}

namespace {

using Terms = std::vector<Equation::Term>;

Equation eq(std::string target, Terms terms) { return Equation{std::move(target), std::move(terms)}; }

}  // namespace

SignalGraph build_topology(const LoopModel& model) {
  validate(model);
  const RationalFunction& p = model.plant;
  const RationalFunction& k = model.controller;
  const RationalFunction one(1.0);

  if (std::holds_alternative<NoCoding>(model.coding)) {
    return SignalGraph({"r", "w", "z", "u", "ubar", "ybar", "y"}, {"r", "w", "z"},
                       {
                           eq("u", {{k, "r"}, {-k, "y"}}),
                           eq("ubar", {{one, "u"}, {one, "w"}}),
                           eq("ybar", {{p, "ubar"}}),
                           eq("y", {{one, "ybar"}, {one, "z"}}),
                       });
  }
  if (const auto* m = std::get_if<OneWay>(&model.coding)) {
    return SignalGraph({"r", "w", "z", "u", "q", "qbar", "ubar", "ybar", "v", "vbar", "y"}, {"r", "w", "z"},
                       {
                           eq("u", {{k, "r"}, {-k, "y"}}),
                           eq("q", {{m->alpha, "u"}}),
                           eq("qbar", {{one, "q"}, {one, "w"}}),
                           eq("ubar", {{1.0 / m->alpha, "qbar"}}),
                           eq("ybar", {{p, "ubar"}}),
                           eq("v", {{m->beta, "ybar"}}),
                           eq("vbar", {{one, "v"}, {one, "z"}}),
                           eq("y", {{1.0 / m->beta, "vbar"}}),
                       });
  }
  const auto& m = std::get<TwoWay>(model.coding);
  const CodingInverse mi = coding_inverse(m);
  return SignalGraph({"r", "w", "z", "u", "q", "y", "qbar", "ubar", "vbar", "ybar", "v"}, {"r", "w", "z"},
                     {
                         eq("u", {{k, "r"}, {-k, "y"}}),
                         eq("q", {{m.a, "u"}, {m.b, "v"}}),
                         eq("y", {{m.c, "u"}, {m.d, "v"}}),
                         eq("qbar", {{one, "q"}, {one, "w"}}),
                         eq("ubar", {{mi.a_bar, "qbar"}, {mi.b_bar, "ybar"}}),
                         eq("vbar", {{mi.c_bar, "qbar"}, {mi.d_bar, "ybar"}}),
                         eq("ybar", {{p, "ubar"}}),
                         eq("v", {{one, "vbar"}, {one, "z"}}),
                     });
}

const RationalFunction& TransferTable::at(const std::string& output, const std::string& input) const {
  const auto it = table_.find({output, input});
  if (it == table_.end()) throw DomainError("transfer table: no map " + input + " -> " + output);
  return it->second;
}

void TransferTable::set(const std::string& output, const std::string& input, RationalFunction tf) {
  table_.insert_or_assign({output, input}, std::move(tf));
}

std::vector<std::string> TransferTable::outputs() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : table_)
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  return out;
}

namespace {

// Lower is a better pivot.
std::tuple<int, double> pivot_rank(const Polynomial& x) { return {x.degree(), -std::abs(x.leading())}; }

double scale_of(const Polynomial& p) { return p.is_zero() ? 0.0 : p.max_abs_coeff(); }

// (p x - q y) / prev, with results at round-off level of the operands
// snapped to zero.
Polynomial bareiss_step(const Polynomial& p, const Polynomial& x, const Polynomial& q, const Polynomial& y,
                        const Polynomial& prev) {
  const Polynomial px = p * x;
  const Polynomial qy = q * y;
  Polynomial d = px - qy;
  if (d.is_zero() || scale_of(d) <= 1e-12 * (scale_of(px) + scale_of(qy))) return {};
  if (prev.degree() == 0) return (1.0 / prev[0]) * d;
  return poly_exact_quotient(d, prev);
}

// Row multiplier clearing the denominators of one equation, and the
// cofactor of each gain's denominator within it.
struct RowScale {
  std::vector<Polynomial> dens;
  Polynomial product{1.0};

  void include(const Polynomial& den) {
    if (den.degree() < 1) return;
    if (std::find(dens.begin(), dens.end(), den) != dens.end()) return;
    dens.push_back(den);
    product = product * den;
  }

  // product / den, formed without division
  Polynomial cofactor(const Polynomial& den) const {
    Polynomial c{1.0};
    bool skipped = false;
    for (const auto& d : dens) {
      if (!skipped && d == den) {
        skipped = true;
        continue;
      }
      c = c * d;
    }
    return c;
  }

  Polynomial scaled(const RationalFunction& gain) const {
    return (1.0 / gain.den().leading()) * gain.num() * cofactor(gain.den());
  }
};

}  // namespace

TransferTable solve_all(const SignalGraph& graph) {
  const auto unknowns = graph.unknowns();
  const auto& inputs = graph.exogenous();
  const std::size_t n = unknowns.size();
  const std::size_t m = inputs.size();

  const auto index_of = [&](const std::vector<std::string>& v, const std::string& s) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };

  // Row i is equation i, x_i - sum G_ij x_j = sum H_ie e, multiplied through
  // by the product of its distinct denominators.
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
  std::vector<std::vector<Polynomial>> rhs(n, std::vector<Polynomial>(m));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& terms = graph.equations()[i].terms;
    RowScale scale;
    for (const auto& t : terms) scale.include(t.gain.den());
    a[i][i] = scale.product;
    for (const auto& t : terms) {
      if (t.gain.is_zero()) continue;
      if (graph.is_exogenous(t.source)) {
        auto& cell = rhs[i][index_of(inputs, t.source)];
        cell = cell + scale.scaled(t.gain);
      } else {
        auto& cell = a[i][index_of(unknowns, t.source)];
        cell = cell - scale.scaled(t.gain);
      }
    }
  }

  // Each row is scaled to a largest coefficient of one.
  for (std::size_t i = 0; i < n; ++i) {
    double big = 0.0;
    for (const auto& c : a[i]) big = std::max(big, scale_of(c));
    for (const auto& c : rhs[i]) big = std::max(big, scale_of(c));
    const double f = 1.0 / big;
    for (auto& c : a[i]) c = f * c;
    for (auto& c : rhs[i]) c = f * c;
  }

  std::vector<std::string> row_label = unknowns;
  std::vector<std::size_t> column(n);
  for (std::size_t j = 0; j < n; ++j) column[j] = j;

  // Fraction-free Gauss-Jordan elimination: every division is exact and on
  // completion each diagonal entry equals the determinant.
  Polynomial prev{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (a[i][j].is_zero()) continue;
        if (pr == n || pivot_rank(a[i][j]) < pivot_rank(a[pr][pc])) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == n) {
      std::vector<std::string> dependent;
      for (std::size_t i = k; i < n; ++i) dependent.push_back(row_label[i]);
      std::string names;
      for (const auto& d : dependent) names += (names.empty() ? "" : ", ") + d;
      throw StructuralError("signal graph is singular; dependent equations: " + names, dependent);
    }
    std::swap(a[k], a[pr]);
    std::swap(rhs[k], rhs[pr]);
    std::swap(row_label[k], row_label[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    std::swap(column[k], column[pc]);

    const Polynomial pivot = a[k][k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Polynomial factor = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        a[i][j] = bareiss_step(pivot, a[i][j], factor, a[k][j], prev);
      }
      for (std::size_t e = 0; e < m; ++e) rhs[i][e] = bareiss_step(pivot, rhs[i][e], factor, rhs[k][e], prev);
      a[i][k] = Polynomial{};
    }
    prev = pivot;
  }

  TransferTable table;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t e = 0; e < m; ++e)
      table.set(unknowns[column[k]], inputs[e], RationalFunction(rhs[k][e], a[k][k]));
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) table.set(inputs[f], inputs[e], RationalFunction(e == f ? 1.0 : 0.0));
  return table;
}

RationalFunction solve_tf(const SignalGraph& graph, const std::string& input, const std::string& output) {
  if (!graph.is_exogenous(input)) throw DomainError("solve_tf: input " + input + " is not exogenous");
  return solve_all(graph).at(output, input);
}

}  // namespace twoctl
