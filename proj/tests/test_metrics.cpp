#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support/oracles.hpp"
#include "support/random_models.hpp"
#include "twoctl/closedloop.hpp"
#include "twoctl/decoupling.hpp"
#include "twoctl/errors.hpp"
#include "twoctl/metrics.hpp"

namespace twoctl {
namespace {

RationalFunction rf(std::vector<double> num, std::vector<double> den) {
  return RationalFunction(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

RationalFunction random_stable(testing::Rng& rng) { return testing::random_proper(rng, 1, 4, -4.0, -0.1); }

TEST(HinfNorm, Examples) {
  EXPECT_NEAR(hinf_norm(rf({1}, {1, 1})), 1.0, 1e-4);
  EXPECT_EQ(hinf_norm(RationalFunction()), 0.0);
  const double zeta = 0.1;
  EXPECT_NEAR(hinf_norm(rf({1}, {1, 0.2, 1})), 1.0 / (2 * zeta * std::sqrt(1 - zeta * zeta)), 1e-3);
}

TEST(HinfNorm, HighFrequencyLimit) {
  // (s + 0.1)/(s + 1) climbs from 0.1 towards 1 as w grows
  EXPECT_NEAR(hinf_norm(rf({0.1, 1}, {1, 1})), 1.0, 1e-6);
  EXPECT_NEAR(hinf_norm(RationalFunction(-3.0)), 3.0, 1e-12);
}

TEST(HinfNorm, Rejections) {
  EXPECT_THROW(hinf_norm(rf({1}, {-1, 1})), DomainError);
  EXPECT_THROW(hinf_norm(rf({1}, {0, 1})), DomainError);
  EXPECT_THROW(hinf_norm(rf({0, 0, 1}, {1, 1})), DomainError);
}

TEST(HinfNormProperty, AgreesWithDenseGrid) {
  testing::Rng rng(81);
  for (int trial = 0; trial < 60; ++trial) {
    const auto tf = random_stable(rng);
    const double h = hinf_norm(tf);
    const double brute = testing::brute_peak(tf, 0.0, 50.0, 200000);
    EXPECT_GE(h, brute * (1 - 1e-9)) << to_string(tf);
    EXPECT_LE(h, std::max(brute, std::abs(tf.num().leading() / tf.den().leading()) * (tf.relative_degree() == 0)) *
                     (1 + 1e-4))
        << to_string(tf);
  }
}

TEST(HinfNormProperty, ScaleLaw) {
  testing::Rng rng(82);
  for (int trial = 0; trial < 100; ++trial) {
    const auto tf = random_stable(rng);
    const double k = testing::random_nonzero(rng, 0.01, 100.0);
    const double h = hinf_norm(tf);
    EXPECT_NEAR(hinf_norm(k * tf), std::abs(k) * h, 1e-6 * std::abs(k) * h) << to_string(tf);
  }
}

TEST(HinfNormProperty, SerialMatchesParallel) {
  testing::Rng rng(83);
  HinfOptions serial;
  serial.exec = kernels::Exec::serial;
  for (int trial = 0; trial < 30; ++trial) {
    const auto tf = random_stable(rng);
    EXPECT_EQ(hinf_norm(tf, serial), hinf_norm(tf));
  }
}

TEST(BodeIntegral, Examples) {
  EXPECT_EQ(bode_integral(RationalFunction()), neg_inf);
  EXPECT_EQ(bode_integral(RationalFunction(1.0)), 0.0);
  EXPECT_EQ(bode_integral(RationalFunction(1.0), 3.0), 0.0);
  EXPECT_EQ(bode_integral(rf({3, 1}, {3, 1})), 0.0);
}

TEST(BodeIntegral, ClosedFormFirstOrder) {
  // (1/pi) int_0^W -0.5 ln(1 + w^2) dw = -(W ln(1 + W^2)/2 - W + atan W)/pi
  for (double w : {0.5, 10.0, 1e4}) {
    const double exact = -(0.5 * w * std::log(1 + w * w) - w + std::atan(w)) / M_PI;
    EXPECT_NEAR(bode_integral(rf({1}, {1, 1}), w), exact, 1e-6) << w;
  }
}

TEST(BodeIntegral, ImaginaryAxisZero) {
  // s/(s + 1): ln|jw/(1 + jw)| is singular but integrable at w = 0
  const double w = 2.0;
  const double exact = (w * std::log(w) - w) / M_PI - (0.5 * w * std::log(1 + w * w) - w + std::atan(w)) / M_PI;
  EXPECT_NEAR(bode_integral(rf({0, 1}, {1, 1}), w), exact, 1e-6);
  // (s^2 + 1)/(s + 1)^2 vanishes at w = 1
  const auto notch = rf({1, 0, 1}, {1, 2, 1});
  EXPECT_NEAR(bode_integral(notch, 3.0), testing::trapezoid_bode(notch, 3.0, 3000001), 1e-4);
}

TEST(BodeIntegral, Rejections) {
  EXPECT_THROW(bode_integral(rf({1}, {-1, 1})), DomainError);
  EXPECT_THROW(bode_integral(rf({1}, {1, 1}), 0.0), DomainError);
  EXPECT_THROW(bode_integral(rf({1}, {1, 1}), -1.0), DomainError);
}

TEST(BodeIntegralProperty, AgreesWithTrapezoid) {
  testing::Rng rng(84);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tf = random_stable(rng);
    const double w = testing::uniform(rng, 1.0, 50.0);
    EXPECT_NEAR(bode_integral(tf, w), testing::trapezoid_bode(tf, w, 400000), 1e-4) << to_string(tf);
  }
}

TEST(BodeIntegralProperty, ConstantAdditivity) {
  testing::Rng rng(85);
  for (int trial = 0; trial < 60; ++trial) {
    const auto tf = random_stable(rng);
    const double k = testing::random_nonzero(rng, 0.01, 100.0);
    const double w = testing::uniform(rng, 1.0, 1e4);
    EXPECT_NEAR(bode_integral(k * tf, w), bode_integral(tf, w) + w / M_PI * std::log(std::abs(k)), 1e-5)
        << to_string(tf) << " k=" << k << " w=" << w;
  }
}

TEST(Metrics, DecoupledDesignReportsSentinels) {
  const auto plant = rf({1}, {1, 1});
  FreeParams free;
  free.gain = 2.0;
  const auto design = std::get<Feasible>(design_decoupling(plant, DecouplingTarget::ForwardAttackW, free));
  const auto t = closed_form_tfs({plant, RationalFunction(design.gain), design.coding});
  EXPECT_EQ(hinf_norm(t.t_uw), 0.0);
  EXPECT_EQ(hinf_norm(t.t_yw), 0.0);
  EXPECT_EQ(bode_integral(t.t_uw), neg_inf);
  EXPECT_EQ(bode_integral(t.t_yw), neg_inf);
  EXPECT_GT(hinf_norm(t.t_ur), 0.0);
  const double tur = bode_integral(t.t_ur, 100.0);
  EXPECT_TRUE(std::isfinite(tur));
  EXPECT_NEAR(tur, testing::trapezoid_bode(t.t_ur, 100.0, 1000000), 1e-4);
}

TEST(MetricsProperty, RandomDesignsReportSentinels) {
  testing::Rng rng(86);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto plant = testing::random_proper(rng, 1, 3);
    const auto target = trial % 2 == 0 ? DecouplingTarget::ForwardAttackW : DecouplingTarget::FeedbackAttackZ;
    const auto r = design_decoupling(plant, target);
    if (!is_feasible(r)) continue;
    const auto& f = std::get<Feasible>(r);
    const auto t = closed_form_tfs({plant, RationalFunction(f.gain), f.coding});
    const auto& attacked = target == DecouplingTarget::ForwardAttackW ? t.t_uw : t.t_uz;
    EXPECT_EQ(bode_integral(attacked), neg_inf);
    EXPECT_EQ(hinf_norm(attacked), 0.0);
    EXPECT_TRUE(std::isfinite(bode_integral(t.t_ur, 10.0)));
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

}  // namespace
}  // namespace twoctl
