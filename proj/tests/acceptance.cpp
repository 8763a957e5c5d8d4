// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "support/loop_oracle.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"
#include "twoctl/attacks.hpp"
#include "twoctl/closedloop.hpp"
#include "twoctl/decoupling.hpp"
#include "twoctl/errors.hpp"
#include "twoctl/metrics.hpp"
#include "twoctl/simulate.hpp"

using namespace twoctl;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void criterion(int id, const std::string& title, F&& body) {
  try {
    std::string detail;
    const bool ok = body(detail);
    report(id, title, ok, detail);
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

RationalFunction rf(std::vector<double> num, std::vector<double> den) {
  return RationalFunction(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

double max_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool oracle_equivalence(std::string& detail) {
  testing::Rng rng(1001);
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto m = testing::random_model(rng, i);
    const auto closed = closed_form_tfs(m);
    const auto oracle = testing::oracle_tfs(m);
    bool equal = true;
    for (auto name : SixTransferFunctions::names) equal = equal && rf_equal(closed[name], oracle[name], 1e-8);
    mismatches += !equal;
    worst = std::max(worst, testing::max_distance(closed, oracle));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail = fmt("200 models, %.0f mismatches, worst distance %.2e, %.2f s", mismatches, worst, seconds);
  return mismatches == 0 && seconds < 10.0;
}

bool coding_identities(std::string& detail) {
  testing::Rng rng(1002);
  int bad = 0, zero_mismatch = 0;
  for (int i = 0; i < 100; ++i) {
    LoopModel m = testing::random_model(rng, 0);
    const bool one_way = i % 2 == 1;
    double alpha = 1.0, beta = 1.0;
    if (one_way) {
      const auto ow = testing::random_one_way(rng);
      alpha = ow.alpha;
      beta = ow.beta;
      m.coding = ow;
    }
    const auto t = closed_form_tfs(m);
    const bool ok = rf_equal(t.t_ur, alpha * m.controller * t.t_uw, 1e-8) &&
                    rf_equal(t.t_ur, RationalFunction(-beta) * t.t_uz, 1e-8);
    bad += !ok;
    zero_mismatch += is_zero_map(t.t_uw) != is_zero_map(t.t_ur);
  }
  detail = fmt("100 models (50 uncoded, 50 one-way), %.0f identity failures, %.0f where T_uw and T_ur differ in vanishing",
               bad, zero_mismatch);
  return bad == 0 && zero_mismatch == 0;
}

bool theorem3_reproduction(std::string& detail) {
  testing::Rng rng(1003);
  int plants = 0, algebraic_failures = 0, infeasible = 0;
  double worst_dev = 0.0, slowest = 0.0;
  const AttackSignal attack = signal::Sinusoid{100.0, 5.0, 0.0};
  SimulationOptions opt;
  opt.t_end = 10.0;
  opt.dt = 1e-3;
  while (plants < 50) {
    const auto plant = testing::random_proper(rng, 1, 4);
    if (!find_static_stabilizing_gain(plant)) continue;
    ++plants;
    for (auto target : {DecouplingTarget::ForwardAttackW, DecouplingTarget::FeedbackAttackZ}) {
      const auto r = design_decoupling(plant, target);
      if (!is_feasible(r)) {
        ++infeasible;
        continue;
      }
      const auto& f = std::get<Feasible>(r);
      const LoopModel m{plant, RationalFunction(f.gain), f.coding};
      const auto t = closed_form_tfs(m);
      const bool w = target == DecouplingTarget::ForwardAttackW;
      const bool ok = is_zero_map(w ? t.t_uw : t.t_uz) && is_zero_map(w ? t.t_yw : t.t_yz) &&
                      is_nonzero_map(t.t_ur) && is_nonzero_map(t.t_yr);
      algebraic_failures += !ok;
      const LoopInputs clean{signal::Step{}, {}, {}};
      const LoopInputs hit = w ? LoopInputs{signal::Step{}, attack, {}} : LoopInputs{signal::Step{}, {}, attack};
      const auto t0 = std::chrono::steady_clock::now();
      const auto attacked = simulate(m, hit, opt);
      slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      const auto base = simulate(m, clean, opt);
      worst_dev = std::max({worst_dev, max_deviation(attacked.at("ubar"), base.at("ubar")),
                            max_deviation(attacked.at("ybar"), base.at("ybar"))});
    }
  }
  detail = fmt("50 plants x {W, Z}: %.0f algebraic failures, ", algebraic_failures) +
           fmt("%.0f infeasible, max deviation %.2e, ", infeasible, worst_dev) + fmt("slowest run %.3f s", slowest);
  return algebraic_failures == 0 && infeasible == 0 && worst_dev < 1e-6 && slowest < 1.0;
}

bool plant_independence(std::string& detail) {
  const double k = 2.0;
  const TwoWay m{1.0, 1.0, -1.0 / k, 1.0};
  testing::Rng rng(1004);
  int plants = 0, bad = 0;
  while (plants < 10) {
    const auto plant = testing::random_proper(rng, 1, 4);
    const LoopModel model{plant, RationalFunction(k), m};
    if (!is_internally_stable(model)) continue;
    ++plants;
    const auto t = closed_form_tfs(model);
    bad += !(is_zero_map(t.t_uw) && is_zero_map(t.t_yw) && check_decoupled(t, DecouplingTarget::ForwardAttackW));
  }
  detail = fmt("K = 2, M = [1, 1, -0.5, 1] on 10 plants stabilized by K: %.0f not decoupled", bad);
  return bad == 0;
}

bool theorem4(std::string& detail) {
  testing::Rng rng(1005);
  int feasible = 0, plants = 0;
  for (int i = 0; i < 50; ++i) {
    const auto plant = testing::random_proper(rng, 1, 4);
    FreeParams free;
    free.a = testing::random_nonzero(rng, 0.2, 5.0);
    free.d = testing::random_nonzero(rng, 0.2, 5.0);
    feasible += is_feasible(design_decoupling(plant, DecouplingTarget::Both, free));
    ++plants;
  }
  int refuted = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = testing::random_nonzero(rng, 1e-3, 1e3);
    const double d = testing::random_nonzero(rng, 1e-3, 1e3);
    const double gain = testing::random_nonzero(rng, 1e-3, 1e3);
    refuted += !verify_impossibility(a, testing::uniform(rng, -10, 10), testing::uniform(rng, -10, 10), d, gain);
  }
  detail = fmt("target Both feasible on %.0f/%.0f plants; verify_impossibility false on %.0f/100 draws", feasible, plants,
               refuted);
  return feasible == 0 && refuted == 0;
}

bool metrics(std::string& detail) {
  const double h1 = hinf_norm(rf({1}, {1, 1}));
  const double zeta = 0.1;
  const double peak = hinf_norm(rf({1}, {1, 0.2, 1}));
  const double analytic = 1.0 / (2 * zeta * std::sqrt(1 - zeta * zeta));
  const auto plant = rf({1}, {1, 1});
  FreeParams free;
  free.gain = 2.0;
  const auto f = std::get<Feasible>(design_decoupling(plant, DecouplingTarget::ForwardAttackW, free));
  const auto t = closed_form_tfs({plant, RationalFunction(f.gain), f.coding});
  const bool sentinels = hinf_norm(t.t_uw) == 0.0 && hinf_norm(t.t_yw) == 0.0 && std::isinf(bode_integral(t.t_uw)) &&
                         bode_integral(t.t_uw) < 0 && std::isinf(bode_integral(t.t_yw));
  const double omega = 100.0;
  const double tur = bode_integral(t.t_ur, omega);
  const double trap = testing::trapezoid_bode(t.t_ur, omega, 2000000);
  std::ostringstream os;
  os.precision(6);
  os << "hinf(1/(s+1)) = " << h1 << ", peak = " << peak << " (analytic " << analytic << "), decoupled sentinels "
     << (sentinels ? "ok" : "wrong") << ", Bode(t_ur) = " << tur << " vs trapezoid " << trap;
  detail = os.str();
  return std::abs(h1 - 1.0) <= 1e-4 && std::abs(peak - analytic) <= 1e-3 && std::abs(analytic - 5.0252) < 1e-4 &&
         sentinels && std::isfinite(tur) && std::abs(tur - trap) <= 1e-4;
}

bool zero_dynamics(std::string& detail) {
  const auto plant = rf({-1, 1}, {2, 3, 1});
  const LoopModel uncoded{plant, RationalFunction(1.0), NoCoding{}};
  const AttackSignal w = signal::Exponential{1.0, 1.0, 0.0};
  SimulationOptions opt;
  opt.t_end = 8.0;
  opt.dt = 1e-3;
  const auto r = simulate(uncoded, {{}, w, {}}, opt);
  const auto& y = r.at("ybar");
  const auto& u = r.at("ubar");
  const std::size_t at1 = 1000;
  const double y_ratio = max_abs(y) / std::abs(y[at1]);
  const double u_growth = std::abs(u.back()) / std::abs(u[at1]);
  const double tyw_at_1 = std::abs(rf_eval(closed_form_tfs(uncoded).t_yw, 1.0));

  const auto design = design_decoupling(plant, DecouplingTarget::ForwardAttackW);
  double coded_dev = INFINITY;
  if (is_feasible(design)) {
    const auto& f = std::get<Feasible>(design);
    const auto coded = simulate({plant, RationalFunction(f.gain), f.coding}, {{}, w, {}}, opt);
    coded_dev = std::max(max_abs(coded.at("ubar")), max_abs(coded.at("ybar")));
  }
  std::ostringstream os;
  os.precision(4);
  os << "uncoded: max|dy|/|dy(1)| = " << y_ratio << ", |du(8)|/|du(1)| = " << u_growth << ", |T_yw(1)| = " << tyw_at_1
     << "; W-decoupled: max deviation " << coded_dev;
  detail = os.str();
  return y_ratio < 5.0 && u_growth > 100.0 && tyw_at_1 < 1e-10 && coded_dev < 1e-6;
}

bool simulation_integrity(std::string& detail) {
  testing::Rng rng(1008);
  SimulationOptions opt;
  opt.t_end = 3.0;
  opt.dt = 1e-2;
  opt.allow_unstable = true;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto m = testing::random_model(rng, i);
    const LoopInputs parts[] = {{signal::Step{0.7, 0.25}, {}, {}},
                                {{}, signal::Sinusoid{1.3, 2.0, 0.4}, {}},
                                {{}, {}, signal::Exponential{-0.8, -0.5, 0.1}}};
    SimulationResult all;
    try {
      all = simulate(m, {parts[0].r, parts[1].w, parts[2].z}, opt);
    } catch (const SimulationError&) {
      continue;
    }
    SimulationResult each[3];
    for (int k = 0; k < 3; ++k) each[k] = simulate(m, parts[k], opt);
    for (const auto& [name, values] : all.series) {
      double scale = 1.0;
      for (double v : values) scale = std::max(scale, std::abs(v));
      for (std::size_t j = 0; j < values.size(); ++j) {
        const double sum = each[0].at(name)[j] + each[1].at(name)[j] + each[2].at(name)[j];
        worst = std::max(worst, std::abs(values[j] - sum) / scale);
      }
    }
  }

  // 1/(s + 1) under K = 2: ybar(t) = (2/3)(1 - exp(-3 t))
  const LoopModel loop{rf({1}, {1, 1}), RationalFunction(2.0), NoCoding{}};
  const auto step_error = [&](double dt) {
    SimulationOptions o;
    o.t_end = 2.0;
    o.dt = dt;
    const auto r = simulate(loop, {signal::Step{}, {}, {}}, o);
    double e = 0.0;
    for (std::size_t j = 0; j < r.times.size(); ++j)
      e = std::max(e, std::abs(r.at("ybar")[j] - 2.0 / 3.0 * (1.0 - std::exp(-3.0 * r.times[j]))));
    return e;
  };
  const double ratio = step_error(0.1) / step_error(0.05);

  const auto csv = [&] {
    std::ostringstream os;
    write_csv(simulate(loop, {signal::Step{}, signal::Sinusoid{1.0, 3.0, 0.0}, {}}), os);
    return os.str();
  };
  const bool identical = csv() == csv();
  detail = fmt("superposition residual %.2e, RK4 error ratio %.2f, ", worst, ratio) +
           std::string("repeated CSV ") + (identical ? "identical" : "differs");
  return worst < 1e-8 && ratio >= 12.0 && identical;
}

}  // namespace

int main() {
  criterion(1, "oracle equivalence", oracle_equivalence);
  criterion(2, "uncoded and one-way identities", coding_identities);
  criterion(3, "decoupling design reproduction", theorem3_reproduction);
  criterion(4, "plant independence", plant_independence);
  criterion(5, "simultaneous decoupling impossible", theorem4);
  criterion(6, "metrics", metrics);
  criterion(7, "zero-dynamics demonstration", zero_dynamics);
  criterion(8, "simulation integrity", simulation_integrity);
  std::printf("%s: %d failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
