#include "twoctl/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>

#include "twoctl/closedloop.hpp"
#include "twoctl/errors.hpp"
#include "twoctl/json_io.hpp"
#include "twoctl/metrics.hpp"
#include "twoctl/scenario.hpp"
#include "twoctl/simulate.hpp"

namespace twoctl::cli {

using json_io::json;
namespace fs = std::filesystem;

Tolerances parse_tolerances(const std::string& text) {
  Tolerances tol;
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string first = text.substr(0, comma);
    tol.zero = std::stod(first, &used);
    if (used != first.size()) throw std::invalid_argument(first);
    if (comma != std::string::npos) {
      const std::string second = text.substr(comma + 1);
      tol.nonzero = std::stod(second, &used);
      if (used != second.size()) throw std::invalid_argument(second);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("TWOCTL_TOL", "expected ZERO or ZERO,NONZERO, got \"" + text + "\"");
  }
  if (!(tol.zero > 0.0) || !(tol.nonzero >= tol.zero))
    throw ConfigError("TWOCTL_TOL", "need 0 < ZERO <= NONZERO");
  return tol;
}

Tolerances tolerances_from_env() {
  const char* v = std::getenv("TWOCTL_TOL");
  if (!v || !*v) return {};
  return parse_tolerances(v);
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + path + ": " + e.what());
  }
}

void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + *path);
  f << text;
}

json tfs_report(const ScenarioConfig& cfg, const Tolerances& tol) {
  const auto tfs = closed_form_tfs(cfg.model);
  return json{{"name", cfg.name},
              {"model",
               {{"plant", json_io::to_json(cfg.model.plant)},
                {"controller", json_io::to_json(cfg.model.controller)},
                {"coding", json_io::to_json(cfg.model.coding)}}},
              {"transfer_functions", json_io::to_json(tfs)},
              {"internally_stable", is_internally_stable(cfg.model)},
              {"decoupled_w", check_decoupled(tfs, DecouplingTarget::ForwardAttackW, tol)},
              {"decoupled_z", check_decoupled(tfs, DecouplingTarget::FeedbackAttackZ, tol)}};
}

json freq_report(const ScenarioConfig& cfg, double omega_max) {
  const auto tfs = closed_form_tfs(cfg.model);
  json maps = json::object();
  for (auto name : SixTransferFunctions::names) {
    json entry;
    try {
      entry["hinf"] = hinf_norm(tfs[name]);
      entry["bode_integral"] = json_io::real_or_sentinel(bode_integral(tfs[name], omega_max));
    } catch (const DomainError& e) {
      entry = json{{"hinf", nullptr}, {"bode_integral", nullptr}, {"error", e.what()}};
    }
    maps[std::string(name)] = entry;
  }
  return json{{"name", cfg.name}, {"omega_max", omega_max}, {"maps", maps}};
}

struct SimulationArtifacts {
  std::string csv;
  json metadata;
};

SimulationArtifacts run_simulation(const ScenarioConfig& cfg, const json& doc, bool allow_unstable, bool timestamp) {
  SimulationOptions opts = cfg.sim;
  opts.allow_unstable = allow_unstable;
  const auto result = simulate(cfg.model, cfg.inputs(), opts);
  std::ostringstream csv;
  write_csv(result, csv);
  json signals = json::array();
  for (const auto& [name, _] : result.series) signals.push_back(name);
  json meta{{"name", cfg.name},
            {"config_hash", hex(json_hash(doc))},
            {"model_hash", hex(result.model_hash)},
            {"dt", result.dt},
            {"t_end", cfg.sim.t_end},
            {"samples", result.times.size()},
            {"signals", signals},
            {"integrator", "rk4"}};
  if (timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["generated_at"] = buf;
  }
  return {csv.str(), meta};
}

// Maps every failure to its exit code and a one-line message.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DesignInfeasibleError& e) {
    err << e.what() << '\n';
    return kInfeasible;
  } catch (const DegenerateLoopError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << '\n';
    return kSimulationError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const StructuralError& e) {
    err << "simulation error: " << e.what() << '\n';
    return kSimulationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationError;
  }
}

struct SweepItem {
  std::string name;
  json doc;
};

std::vector<SweepItem> load_sweep(const std::string& path) {
  const json sweep = load_json_file(path);
  json_io::require_object(sweep, "");
  if (!sweep.contains("scenarios") || !sweep.at("scenarios").is_array())
    throw ConfigError("/scenarios", "expected an array of scenarios or scenario file paths");
  const fs::path base = fs::path(path).parent_path();
  std::vector<SweepItem> items;
  std::set<std::string> seen;
  const auto& list = sweep.at("scenarios");
  for (std::size_t i = 0; i < list.size(); ++i) {
    json doc;
    if (list[i].is_string()) {
      fs::path p = list[i].get<std::string>();
      if (p.is_relative()) p = base / p;
      doc = load_json_file(p.string());
    } else {
      doc = json_io::require_object(list[i], "/scenarios/" + std::to_string(i));
    }
    std::string name = doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>()
                                                                           : "scenario_" + std::to_string(i);
    if (!seen.insert(name).second) throw ConfigError("/scenarios/" + std::to_string(i) + "/name", "duplicate scenario name " + name);
    items.push_back({std::move(name), std::move(doc)});
  }
  return items;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"twoctl: two-way coding and attack decoupling for SISO feedback loops"};
  app.require_subcommand(1);

  std::string config_path, out_path, plant_text, target_text = "w";
  bool allow_unstable = false, timestamp = false;
  int jobs = 1;
  double omega_max = 1e4;
  FreeParams free;
  double gain = 0.0;

  auto* tfs_cmd = app.add_subcommand("tfs", "closed-form transfer functions, stability and decoupling verdicts");
  tfs_cmd->add_option("--config", config_path, "scenario JSON")->required();
  tfs_cmd->add_option("--out", out_path, "report path (default stdout)");

  auto* design_cmd = app.add_subcommand("design", "co-design static gain and two-way coding");
  design_cmd->add_option("--config", config_path, "scenario JSON (its plant is used) or a bare {num, den} object");
  design_cmd->add_option("--plant", plant_text, "plant as inline JSON {\"num\": [...], \"den\": [...]}");
  design_cmd->add_option("--target", target_text, "w, z or both")->check(CLI::IsMember({"w", "z", "both"}));
  design_cmd->add_option("--a", free.a, "free coding entry a");
  design_cmd->add_option("--b", free.b, "free coding entry b (w target)");
  design_cmd->add_option("--c", free.c, "free coding entry c (z target)");
  design_cmd->add_option("--d", free.d, "free coding entry d");
  auto* gain_opt = design_cmd->add_option("--gain", gain, "use this static gain instead of searching");
  design_cmd->add_option("--out", out_path, "result path (default stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "time-domain simulation to CSV plus JSON metadata");
  sim_cmd->add_option("--config", config_path, "scenario JSON")->required();
  sim_cmd->add_option("--out", out_path, "CSV path (default outputs.csv or stdout)");
  sim_cmd->add_flag("--allow-unstable", allow_unstable, "simulate loops that fail the stability test");
  sim_cmd->add_flag("--timestamp", timestamp, "record generation time in the metadata");

  auto* freq_cmd = app.add_subcommand("freq", "H-infinity norms and band-limited Bode integrals of the six maps");
  freq_cmd->add_option("--config", config_path, "scenario JSON")->required();
  freq_cmd->add_option("--out", out_path, "report path (default stdout)");
  freq_cmd->add_option("--omega-max", omega_max, "upper band edge in rad/s")->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "run many scenarios, one output set per scenario");
  sweep_cmd->add_option("--config", config_path, "sweep JSON {\"scenarios\": [...]}")->required();
  sweep_cmd->add_option("--out", out_path, "output directory")->required();
  sweep_cmd->add_option("--jobs", jobs, "parallel scenarios")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--allow-unstable", allow_unstable, "simulate loops that fail the stability test");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kConfigError;
  }

  const auto maybe_out = [&]() -> std::optional<std::string> {
    if (out_path.empty()) return std::nullopt;
    return out_path;
  };

  return guarded(err, [&]() -> int {
    const Tolerances tol = tolerances_from_env();

    if (*tfs_cmd) {
      const json doc = load_json_file(config_path);
      const auto cfg = parse_scenario(doc, tol);
      auto path = maybe_out();
      if (!path) path = cfg.outputs.report;
      write_text(path, tfs_report(cfg, tol).dump(2) + "\n", out);
      return kOk;
    }

    if (*design_cmd) {
      RationalFunction plant;
      if (!plant_text.empty()) {
        json j;
        try {
          j = json::parse(plant_text);
        } catch (const json::parse_error& e) {
          throw ConfigError("--plant", std::string("malformed JSON: ") + e.what());
        }
        plant = json_io::parse_rational(j, "--plant");
      } else if (!config_path.empty()) {
        const json doc = load_json_file(config_path);
        json_io::require_object(doc, "");
        plant = doc.contains("plant") ? json_io::parse_rational(doc.at("plant"), "/plant")
                                      : json_io::parse_rational(doc, "");
      } else {
        throw ConfigError("--plant", "give --plant or --config");
      }
      if (!plant.is_proper()) throw ConfigError("/plant", "plant must be proper");
      if (free.a * free.d == 0.0) throw ConfigError("--a/--d", "free parameters must satisfy a d != 0");
      if (gain_opt->count() > 0) free.gain = gain;
      const auto result = design_decoupling(plant, json_io::parse_target(target_text), free, {}, tol);
      write_text(maybe_out(), json_io::to_json(result).dump(2) + "\n", out);
      return is_feasible(result) ? kOk : kInfeasible;
    }

    if (*sim_cmd) {
      const json doc = load_json_file(config_path);
      const auto cfg = parse_scenario(doc, tol);
      const auto artifacts = run_simulation(cfg, doc, allow_unstable, timestamp);
      auto csv_path = maybe_out();
      if (!csv_path) csv_path = cfg.outputs.csv;
      write_text(csv_path, artifacts.csv, out);
      std::optional<std::string> meta_path = cfg.outputs.metadata;
      if (!meta_path && csv_path) meta_path = *csv_path + ".meta.json";
      if (meta_path) write_text(meta_path, artifacts.metadata.dump(2) + "\n", out);
      return kOk;
    }

    if (*freq_cmd) {
      const json doc = load_json_file(config_path);
      const auto cfg = parse_scenario(doc, tol);
      write_text(maybe_out(), freq_report(cfg, omega_max).dump(2) + "\n", out);
      return kOk;
    }

    // sweep
    const auto items = load_sweep(config_path);
    fs::create_directories(out_path);
    std::vector<int> codes(items.size(), kOk);
    std::vector<std::string> messages(items.size());
    const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      std::ostringstream local_err, unused;
      const auto& item = items[static_cast<std::size_t>(i)];
      codes[i] = guarded(local_err, [&]() -> int {
        const auto cfg = parse_scenario(item.doc, tol);
        const fs::path dir(out_path);
        write_text((dir / (item.name + ".tfs.json")).string(), tfs_report(cfg, tol).dump(2) + "\n", unused);
        const auto artifacts = run_simulation(cfg, item.doc, allow_unstable, false);
        write_text((dir / (item.name + ".csv")).string(), artifacts.csv, unused);
        write_text((dir / (item.name + ".meta.json")).string(), artifacts.metadata.dump(2) + "\n", unused);
        return kOk;
      });
      messages[i] = local_err.str();
    }
    json summary = json::array();
    int worst = kOk;
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::string msg = messages[i];
      while (!msg.empty() && msg.back() == '\n') msg.pop_back();
      summary.push_back({{"name", items[i].name}, {"exit_code", codes[i]}, {"message", msg}});
      worst = std::max(worst, codes[i]);
    }
    out << json{{"scenarios", summary}}.dump(2) << '\n';
    return worst;
  });
}

}  // namespace twoctl::cli
