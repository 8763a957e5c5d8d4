#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "twoctl/attacks.hpp"
#include "twoctl/coding.hpp"
#include "twoctl/rational.hpp"

namespace twoctl {

/// Single-input single-output realization x' = A x + B u, y = C x + D u.
struct StateSpace {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;
  double d = 0.0;

  int order() const { return static_cast<int>(a.rows()); }
  /// C (sI - A)^-1 B + D.
  std::complex<double> transfer(std::complex<double> s) const;
};

/// Controllable canonical form of a proper transfer function; zero and
/// constant maps give order 0. Throws DomainError when tf is improper.
StateSpace realize(const RationalFunction& tf);

/// Fixed-step RK4 response from zero initial state, sampled at k*dt for
/// k = 0..steps. Inputs are sampled at the RK4 stage times t, t + dt/2, t + dt.
std::vector<double> integrate(const StateSpace& sys, const AttackSignal& input, double dt, std::size_t steps);

struct LoopInputs {
  AttackSignal r;
  AttackSignal w;
  AttackSignal z;
};

struct SimulationOptions {
  double t_end = 10.0;
  double dt = 1e-3;
  /// Run models that fail the internal-stability test instead of rejecting them.
  bool allow_unstable = false;
};

struct SimulationResult {
  std::vector<double> times;
  /// Signal name -> samples, in wiring order (ubar and ybar always present).
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::uint64_t model_hash = 0;
  double dt = 0.0;

  const std::vector<double>& at(const std::string& name) const;
  bool has(const std::string& name) const;
};

/// Each tracked signal is the superposition of its responses to r, w and z,
/// each obtained by realizing the signal-flow solution of the loop and
/// integrating it with RK4 from zero initial state. Maps that are
/// identically zero contribute exact zeros.
///
/// Throws SimulationError for an unstable model (unless allowed), for
/// dt <= 0 or t_end < dt, and for an improper closed-loop map (naming it).
SimulationResult simulate(const LoopModel& model, const LoopInputs& inputs, const SimulationOptions& options = {});

/// Samples of any signal (covert ones included) on the grid k*dt, k = 0..steps.
std::vector<double> render(const AttackSignal& sig, double dt, std::size_t steps);

/// Number of steps for a horizon: round(t_end / dt).
std::size_t step_count(double t_end, double dt);

/// FNV-1a over the canonical coefficients and coding parameters.
std::uint64_t model_hash(const LoopModel& model);

/// "t,<signal>,..." header, one row per sample, 15 significant digits.
void write_csv(const SimulationResult& result, std::ostream& os);

}  // namespace twoctl
