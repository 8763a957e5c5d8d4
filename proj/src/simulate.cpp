#include "twoctl/simulate.hpp"

#include <Eigen/LU>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>

#include "twoctl/blockdiagram.hpp"
#include "twoctl/closedloop.hpp"
#include "twoctl/errors.hpp"

namespace twoctl {

std::complex<double> StateSpace::transfer(std::complex<double> s) const {
  const int n = order();
  if (n == 0) return d;
  const Eigen::MatrixXcd lhs = s * Eigen::MatrixXcd::Identity(n, n) - a.cast<std::complex<double>>();
  const Eigen::VectorXcd x = lhs.partialPivLu().solve(b.cast<std::complex<double>>());
  return (c.cast<std::complex<double>>() * x)(0) + d;
}

StateSpace realize(const RationalFunction& tf) {
  if (!tf.is_proper()) throw DomainError("realize: transfer function " + to_string(tf) + " is improper");
  const int n = tf.den().degree();
  StateSpace ss;
  if (tf.is_zero() || n == 0) {
    ss.a.resize(0, 0);
    ss.b.resize(0);
    ss.c.resize(0);
    ss.d = tf.is_zero() ? 0.0 : tf.num()[0] / tf.den()[0];
    return ss;
  }
  // den is monic; split off the feedthrough so the remainder is strictly proper.
  const double feedthrough = tf.num()[static_cast<std::size_t>(n)];
  ss.a = Eigen::MatrixXd::Zero(n, n);
  ss.b = Eigen::VectorXd::Zero(n);
  ss.c = Eigen::RowVectorXd::Zero(n);
  for (int i = 0; i + 1 < n; ++i) ss.a(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) {
    ss.a(n - 1, j) = -tf.den()[static_cast<std::size_t>(j)];
    ss.c(j) = tf.num()[static_cast<std::size_t>(j)] - feedthrough * tf.den()[static_cast<std::size_t>(j)];
  }
  ss.b(n - 1) = 1.0;
  ss.d = feedthrough;
  return ss;
}

std::vector<double> integrate(const StateSpace& sys, const AttackSignal& input, double dt, std::size_t steps) {
  std::vector<double> y(steps + 1, 0.0);
  const int n = sys.order();
  if (n == 0) {
    if (sys.d != 0.0)
      for (std::size_t k = 0; k <= steps; ++k) y[k] = sys.d * sample(input, static_cast<double>(k) * dt);
    return y;
  }

  const Eigen::MatrixXd& a = sys.a;
  const Eigen::VectorXd& b = sys.b;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
  const auto f = [&](const Eigen::VectorXd& state, double u, Eigen::VectorXd& out) {
    out.noalias() = a * state;
    out += b * u;
  };

  y[0] = sys.d * sample(input, 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double u0 = sample(input, t);
    const double uh = sample(input, t + 0.5 * dt);
    const double u1 = sample(input, static_cast<double>(k + 1) * dt);
    f(x, u0, k1);
    tmp = x + 0.5 * dt * k1;
    f(tmp, uh, k2);
    tmp = x + 0.5 * dt * k2;
    f(tmp, uh, k3);
    tmp = x + dt * k3;
    f(tmp, u1, k4);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    y[k + 1] = sys.c.dot(x) + sys.d * u1;
  }
  return y;
}

std::size_t step_count(double t_end, double dt) {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

const std::vector<double>& SimulationResult::at(const std::string& name) const {
  for (const auto& [n, v] : series)
    if (n == name) return v;
  throw DomainError("simulation result: no signal " + name);
}

bool SimulationResult::has(const std::string& name) const {
  for (const auto& [n, v] : series)
    if (n == name) return true;
  return false;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ULL;
    }
  }
  void real(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    bytes(&bits, sizeof bits);
  }
  void poly(const Polynomial& p) {
    const std::uint64_t n = p.coeffs().size();
    bytes(&n, sizeof n);
    for (double c : p.coeffs()) real(c);
  }
};

}  // namespace

std::uint64_t model_hash(const LoopModel& model) {
  Fnv1a h;
  h.poly(model.plant.num());
  h.poly(model.plant.den());
  h.poly(model.controller.num());
  h.poly(model.controller.den());
  const auto tag = static_cast<std::uint64_t>(model.coding.index());
  h.bytes(&tag, sizeof tag);
  if (const auto* m = std::get_if<OneWay>(&model.coding)) {
    h.real(m->alpha);
    h.real(m->beta);
  } else if (const auto* t = std::get_if<TwoWay>(&model.coding)) {
    h.real(t->a);
    h.real(t->b);
    h.real(t->c);
    h.real(t->d);
  }
  return h.h;
}

std::vector<double> render(const AttackSignal& sig, double dt, std::size_t steps) {
  const auto parts = decompose(sig);
  if (parts.filter.is_zero() || parts.base.is_zero()) return std::vector<double>(steps + 1, 0.0);
  return integrate(realize(parts.filter), parts.base, dt, steps);
}

SimulationResult simulate(const LoopModel& model, const LoopInputs& inputs, const SimulationOptions& options) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw SimulationError("simulate: dt must be positive");
  if (!(options.t_end >= options.dt) || !std::isfinite(options.t_end))
    throw SimulationError("simulate: t_end must be at least dt");
  validate(model);
  validate(inputs.r);
  validate(inputs.w);
  validate(inputs.z);
  if (!options.allow_unstable && !is_internally_stable(model))
    throw SimulationError("simulate: model is not internally stable (use allow_unstable to override)");

  const SignalGraph graph = build_topology(model);
  const TransferTable table = solve_all(graph);
  const std::size_t steps = step_count(options.t_end, options.dt);

  const std::pair<const char*, const AttackSignal*> sources[] = {
      {"r", &inputs.r}, {"w", &inputs.w}, {"z", &inputs.z}};

  SimulationResult result;
  result.dt = options.dt;
  result.model_hash = model_hash(model);
  result.times.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) result.times[k] = static_cast<double>(k) * options.dt;

  for (const auto& name : graph.unknowns()) {
    for (const auto& [input, _] : sources) {
      if (!table.at(name, input).is_proper())
        throw SimulationError("simulate: closed-loop map " + std::string(input) + " -> " + name + " is improper: " +
                              to_string(table.at(name, input)));
    }
  }

  for (const auto& name : graph.unknowns()) {
    std::vector<double> total(steps + 1, 0.0);
    for (const auto& [input, sig] : sources) {
      const auto parts = decompose(*sig);
      if (parts.base.is_zero()) continue;
      const RationalFunction map = table.at(name, input) * parts.filter;
      if (map.is_zero()) continue;
      StateSpace ss;
      try {
        ss = realize(map);
      } catch (const DomainError& e) {
        throw SimulationError("simulate: map " + std::string(input) + " -> " + name + ": " + e.what());
      }
      const auto y = integrate(ss, parts.base, options.dt, steps);
      for (std::size_t k = 0; k <= steps; ++k) total[k] += y[k];
    }
    result.series.emplace_back(name, std::move(total));
  }
  return result;
}

void write_csv(const SimulationResult& result, std::ostream& os) {
  os << "t";
  for (const auto& [name, _] : result.series) os << ',' << name;
  os << '\n';
  char buf[32];
  for (std::size_t k = 0; k < result.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.15g", result.times[k]);
    os << buf;
    for (const auto& [_, v] : result.series) {
      std::snprintf(buf, sizeof buf, "%.15g", v[k]);
      os << ',' << buf;
    }
    os << '\n';
  }
}

}  // namespace twoctl
