#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twoctl/coding.hpp"
#include "twoctl/rational.hpp"

namespace twoctl {

/// One linear relation `target = sum_i gain_i * source_i`.
struct Equation {
  struct Term {
    RationalFunction gain;
    std::string source;
  };
  std::string target;
  std::vector<Term> terms;
};

/// Linear signal-flow graph over rational-function gains. Exogenous signals
/// have no defining equation; every other signal has exactly one.
class SignalGraph {
 public:
  SignalGraph(std::vector<std::string> signals, std::vector<std::string> exogenous,
              std::vector<Equation> equations);

  const std::vector<std::string>& signals() const { return signals_; }
  const std::vector<std::string>& exogenous() const { return exogenous_; }
  const std::vector<Equation>& equations() const { return equations_; }
  /// Non-exogenous signals in equation order.
  std::vector<std::string> unknowns() const;
  bool is_exogenous(const std::string& name) const;
  const Equation& equation_for(const std::string& target) const;

  /// Same graph with the equations listed in a different order.
  SignalGraph permuted(const std::vector<std::size_t>& order) const;

  /// One line per equation, e.g. "ubar = [1]*qbar + [-0.5]*ybar".
  std::string to_string() const;

 private:
  std::vector<std::string> signals_;
  std::vector<std::string> exogenous_;
  std::vector<Equation> equations_;
};

/// Wiring of the loop for the model's coding scheme. Signal names:
/// r, w, z (exogenous), u, q, qbar, y, v, vbar, ubar, ybar.
///
///   uncoded:  u = K(r - y), ubar = u + w, ybar = P ubar, y = ybar + z
///   one-way:  u = K(r - y), q = alpha u, qbar = q + w, ubar = qbar/alpha,
///             ybar = P ubar, v = beta ybar, vbar = v + z, y = vbar/beta
///   two-way:  u = K(r - y), q = a u + b v, y = c u + d v, qbar = q + w,
///             ubar = a_bar qbar + b_bar ybar, vbar = c_bar qbar + d_bar ybar,
///             ybar = P ubar, v = vbar + z
SignalGraph build_topology(const LoopModel& model);

/// Every (output signal, exogenous input) transfer function of a graph.
class TransferTable {
 public:
  const RationalFunction& at(const std::string& output, const std::string& input) const;
  void set(const std::string& output, const std::string& input, RationalFunction tf);
  std::vector<std::string> outputs() const;

 private:
  std::map<std::pair<std::string, std::string>, RationalFunction> table_;
};

/// Fully pivoted elimination of (I - G) x = H e. Each equation is first
/// multiplied by its denominators and scaled to a largest coefficient of
/// one, then reduced by fraction-free
/// Gauss-Jordan elimination over polynomials; each result is normalized once
/// at the end. Pivots are chosen by lowest degree, then largest leading
/// coefficient. Throws StructuralError naming the equations left without a
/// pivot when the system is singular.
TransferTable solve_all(const SignalGraph& graph);

/// Transfer function from exogenous `input` to `output` with the other
/// exogenous inputs held at zero.
RationalFunction solve_tf(const SignalGraph& graph, const std::string& input, const std::string& output);

}  // namespace twoctl
