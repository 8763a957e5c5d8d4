#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "support/random_models.hpp"
#include "twoctl/errors.hpp"
#include "twoctl/json_io.hpp"
#include "twoctl/scenario.hpp"

namespace twoctl {
namespace {

using json_io::json;

RationalFunction rf(std::vector<double> num, std::vector<double> den) {
  return RationalFunction(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

std::string config_error_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

json base_scenario() {
  return json::parse(R"({
    "name": "base",
    "plant": {"num": [1], "den": [1, 1]},
    "controller": 2,
    "coding": {"type": "two_way", "a": 1, "b": 1, "c": -0.5, "d": 1},
    "reference": {"type": "step"},
    "attacks": {"w": {"type": "sinusoid", "amplitude": 100, "omega": 5}},
    "sim": {"t_end": 3, "dt": 0.01}
  })");
}

TEST(JsonIo, RationalForms) {
  EXPECT_EQ(json_io::to_json(rf({2, 1}, {3, 4, 1})), json::parse(R"({"num": [2.0, 1.0], "den": [3.0, 4.0, 1.0]})"));
  EXPECT_EQ(json_io::parse_rational(json(2.5), "/k"), RationalFunction(2.5));
  EXPECT_TRUE(rf_equal(json_io::parse_rational(json::parse(R"({"num": [2, 2], "den": [2, 4, 2]})"), ""), rf({1}, {1, 1})));
  EXPECT_EQ(json_io::to_json(RationalFunction()), json::parse(R"({"num": [], "den": [1.0]})"));
}

TEST(JsonIo, ErrorsCarryPointers) {
  EXPECT_EQ(config_error_path([] { json_io::parse_rational(json::parse(R"({"num": [1]})"), "/plant"); }), "/plant/den");
  EXPECT_EQ(config_error_path([] { json_io::parse_rational(json::parse(R"({"num": [1, "x"], "den": [1]})"), "/plant"); }),
            "/plant/num/1");
  EXPECT_EQ(config_error_path([] { json_io::parse_rational(json::parse(R"({"num": [1], "den": [0, 0]})"), "/p"); }),
            "/p/den");
  EXPECT_EQ(config_error_path([] { json_io::parse_coding(json::parse(R"({"type": "two_way", "a": 1, "b": 0, "c": 0})"), "/coding"); }),
            "/coding/d");
  EXPECT_EQ(config_error_path([] { json_io::parse_coding(json::parse(R"({"type": "two_way", "a": 0, "b": 0, "c": 0, "d": 1})"), "/coding"); }),
            "/coding");
  EXPECT_EQ(config_error_path([] { json_io::parse_coding(json::parse(R"({"type": "three_way"})"), "/coding"); }),
            "/coding/type");
  EXPECT_EQ(config_error_path([] { json_io::parse_signal(json::parse(R"({"type": "sinusoid"})"), "/attacks/w"); }),
            "/attacks/w/omega");
  EXPECT_EQ(config_error_path([] { json_io::parse_signal(json::parse(R"({"type": "exponential", "eta": "auto"})"), "/w"); }),
            "/w/eta");
  const auto minimum_phase = rf({1, 1}, {2, 3, 1});
  EXPECT_EQ(config_error_path([&] {
              json_io::parse_signal(json::parse(R"({"type": "exponential", "eta": "auto"})"), "/w", &minimum_phase);
            }),
            "/w/eta");
}

TEST(JsonIo, AutoExponentUsesPlantZero) {
  const auto plant = rf({-2, 1}, {2, 3, 1});
  const auto sig = json_io::parse_signal(json::parse(R"({"type": "exponential", "gain": 3, "eta": "auto"})"), "/w", &plant);
  EXPECT_EQ(sig, (AttackSignal{signal::Exponential{3.0, 2.0, 0.0}}));
}

TEST(JsonIo, Sentinels) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(json_io::real_or_sentinel(-inf), json("-inf"));
  EXPECT_EQ(json_io::real_or_sentinel(inf), json("inf"));
  EXPECT_EQ(json_io::real_or_sentinel(1.5), json(1.5));
  EXPECT_EQ(json_io::parse_real_or_sentinel(json("-inf"), ""), -inf);
  EXPECT_EQ(json_io::parse_real_or_sentinel(json(2.0), ""), 2.0);
  EXPECT_THROW(json_io::parse_real_or_sentinel(json("nan"), ""), ConfigError);
}

TEST(JsonIo, DesignResultForms) {
  const DesignResult ok = Feasible{2.0, TwoWay{1, 1, -0.5, 1}};
  EXPECT_EQ(json_io::to_json(ok), json::parse(R"({"feasible": true, "K": 2.0, "M": [1.0, 1.0, -0.5, 1.0], "reason": null})"));
  const DesignResult bad = Infeasible{"no static stabilizing gain"};
  EXPECT_EQ(json_io::to_json(bad)["reason"], "no static stabilizing gain");
  EXPECT_EQ(json_io::parse_design_result(json_io::to_json(ok), ""), ok);
  EXPECT_EQ(json_io::parse_design_result(json_io::to_json(bad), ""), bad);
}

TEST(JsonIoProperty, RoundTrips) {
  testing::Rng rng(91);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = testing::random_model(rng, trial);
    const auto text = [](const json& j) { return json::parse(j.dump()); };
    EXPECT_EQ(json_io::parse_rational(text(json_io::to_json(m.plant)), ""), m.plant);
    EXPECT_EQ(json_io::parse_coding(text(json_io::to_json(m.coding)), ""), m.coding);
    const auto tfs = closed_form_tfs(m);
    EXPECT_EQ(json_io::parse_six(text(json_io::to_json(tfs)), ""), tfs);
    const AttackSignal sigs[] = {
        signal::Step{testing::uniform(rng, -5, 5), testing::uniform(rng, 0, 3)},
        signal::Sinusoid{testing::uniform(rng, -5, 5), testing::uniform(rng, 0, 9), testing::uniform(rng, -3, 3)},
        signal::Exponential{testing::uniform(rng, -5, 5), testing::uniform(rng, -2, 2), testing::uniform(rng, 0, 3)},
        covert_pair(signal::Sinusoid{1.0, testing::uniform(rng, 0, 9), 0.0}, m.plant).second,
    };
    for (const auto& sig : sigs) EXPECT_EQ(json_io::parse_signal(text(json_io::to_json(sig)), ""), sig);
  }
}

TEST(Scenario, ParsesAndResolves) {
  const auto cfg = parse_scenario(base_scenario());
  EXPECT_EQ(cfg.name, "base");
  EXPECT_EQ(cfg.model.controller, RationalFunction(2.0));
  EXPECT_EQ(cfg.model.coding, (CodingScheme{TwoWay{1, 1, -0.5, 1}}));
  EXPECT_EQ(cfg.reference, (AttackSignal{signal::Step{1.0, 0.0}}));
  EXPECT_EQ(cfg.w, (AttackSignal{signal::Sinusoid{100.0, 5.0, 0.0}}));
  EXPECT_EQ(cfg.z, AttackSignal{});
  EXPECT_EQ(cfg.sim.t_end, 3.0);
  EXPECT_EQ(cfg.sim.dt, 0.01);
}

TEST(Scenario, DesignBlockResolvesToCoding) {
  auto doc = base_scenario();
  doc.erase("controller");
  doc.erase("coding");
  doc["design"] = json::parse(R"({"target": "w", "gain": 2})");
  const auto cfg = parse_scenario(doc);
  EXPECT_EQ(cfg.model.controller, RationalFunction(2.0));
  EXPECT_EQ(cfg.model.coding, (CodingScheme{TwoWay{1, 1, -0.5, 1}}));
  doc["design"]["target"] = "both";
  EXPECT_THROW(parse_scenario(doc), DesignInfeasibleError);
}

TEST(Scenario, Rejections) {
  const auto path_of = [](json doc) { return config_error_path([&] { parse_scenario(doc); }); };
  auto doc = base_scenario();
  doc["colour"] = "red";
  EXPECT_EQ(path_of(doc), "/colour");
  doc = base_scenario();
  doc.erase("plant");
  EXPECT_EQ(path_of(doc), "/plant");
  doc = base_scenario();
  doc["plant"] = json::parse(R"({"num": [0, 0, 1], "den": [1, 1]})");
  EXPECT_EQ(path_of(doc), "/plant");
  doc = base_scenario();
  doc["design"] = json::parse(R"({"target": "w"})");
  EXPECT_EQ(path_of(doc), "/design");
  doc = base_scenario();
  doc["sim"]["dt"] = 0;
  EXPECT_EQ(path_of(doc), "/sim/dt");
  doc = base_scenario();
  doc["attacks"]["covert"] = json::parse(R"({"w": {"type": "step"}, "plant_model": "plant"})");
  EXPECT_EQ(path_of(doc), "/attacks/covert");
  EXPECT_EQ(path_of(json::array()), "");
}

TEST(Scenario, CovertShorthandSetsBothChannels) {
  auto doc = base_scenario();
  doc["attacks"] = json::parse(R"({"covert": {"w": {"type": "step"}, "plant_model": "plant"}})");
  const auto cfg = parse_scenario(doc);
  EXPECT_EQ(cfg.w, (AttackSignal{signal::Step{1.0, 0.0}}));
  const auto& covert = std::get<signal::Covert>(cfg.z.value);
  EXPECT_EQ(covert.plant_model, cfg.model.plant);
}

TEST(Scenario, ShippedFilesRoundTrip) {
  const char* dir = std::getenv("TWOCTL_SCENARIOS");
  if (!dir) dir = TWOCTL_SCENARIOS_DEFAULT;
  int parsed = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(entry.path());
    const auto doc = json::parse(in);
    if (doc.contains("scenarios")) continue;
    const auto cfg = parse_scenario(doc);
    auto expected = cfg;
    expected.design.reset();
    EXPECT_EQ(parse_scenario(json::parse(to_json(cfg).dump())), expected) << entry.path();
    ++parsed;
  }
  EXPECT_GE(parsed, 6);
}

TEST(Scenario, HashIsKeyOrderIndependent) {
  const auto a = json::parse(R"({"x": 1, "y": [1, 2]})");
  const auto b = json::parse(R"({"y": [1, 2], "x": 1})");
  EXPECT_EQ(json_hash(a), json_hash(b));
  EXPECT_NE(json_hash(a), json_hash(json::parse(R"({"x": 2, "y": [1, 2]})")));
}

}  // namespace
}  // namespace twoctl
