#include <gtest/gtest.h>

#include <random>

#include "evac/engine.hpp"
#include "evac/oracle.hpp"

using namespace evac;

namespace {

Configuration cfg(Model m, double alpha, double exit, int orient) {
  Configuration c;
  c.model = m;
  c.alpha = alpha;
  c.exit_angle = Angle(exit);
  c.orientation = orient;
  return c;
}

}  // namespace

TEST(Oracle, HandTracedConfigurations) {
  EXPECT_NEAR(oracle_simulate(cfg(Model::wireless, kPi / 2, 0.3 + kPi / 2, -1), 1e-4), 2.7142, 5e-3);
  EXPECT_NEAR(oracle_simulate(cfg(Model::f2f, 1.0, 0.4, +1), 1e-4), 3.3177, 5e-3);
  EXPECT_NEAR(oracle_simulate(cfg(Model::wireless, 0.0, kPi / 3, +1), 1e-4), 2.0472, 5e-3);
  EXPECT_NEAR(oracle_simulate(cfg(Model::f2f, 0.0, kPi / 3, +1), 1e-4), 2.0472, 5e-3);
}

TEST(Oracle, RendezvousOutcomesAgreeWithEngine) {
  for (auto c : {cfg(Model::f2f, 1.8, 5.5606, +1), cfg(Model::f2f, 1.8, 2.6861, +1),
                 cfg(Model::f2f, 2.5, 5.4287, +1), cfg(Model::f2f, 2.5, 1.2849, +1)}) {
    EXPECT_NEAR(oracle_simulate(c, 1e-4), simulate(c).evac_time, 5e-3) << c.alpha << ' ' << c.exit_angle.value();
  }
}

TEST(Oracle, SeededRandomAgreement) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.0, kPi), ue(0.0, kTwoPi);
  for (int i = 0; i < 20; ++i) {
    const auto c = cfg(i % 2 ? Model::f2f : Model::wireless, ua(rng), ue(rng), i % 3 ? +1 : -1);
    EXPECT_NEAR(oracle_simulate(c, 1e-4), simulate(c).evac_time, 5e-3)
        << to_string(c.model) << ' ' << c.alpha << ' ' << c.exit_angle.value();
  }
}

TEST(Oracle, StepErrorShrinksWithDt) {
  const auto c = cfg(Model::f2f, 1.0, 0.4, +1);
  const double exact = simulate(c).evac_time;
  EXPECT_LE(std::abs(oracle_simulate(c, 1e-4) - exact), std::abs(oracle_simulate(c, 1e-3) - exact) + 1e-4);
}

TEST(Oracle, RejectsBadStep) {
  const auto c = cfg(Model::wireless, 1.0, 0.4, +1);
  EXPECT_THROW(oracle_simulate(c, 0.0), std::invalid_argument);
  EXPECT_THROW(oracle_simulate(c, 1e-2), std::invalid_argument);
  EXPECT_THROW(oracle_simulate(cfg(Model::wireless, 5.0, 0.0, +1), 1e-4), std::invalid_argument);
}
