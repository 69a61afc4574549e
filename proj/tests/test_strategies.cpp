#include <gtest/gtest.h>

#include <cmath>

#include "evac/strategies.hpp"

using namespace evac;

namespace {

// Independent root finder for the branch parameter: Newton from 1.2.
double newton_root() {
  double a = 1.2;
  for (int i = 0; i < 50; ++i) {
    const double f = 1.5 * a - kPi - std::sin(a / 2) + 2 * std::sin(a);
    const double df = 1.5 - 0.5 * std::cos(a / 2) + 2 * std::cos(a);
    a -= f / df;
  }
  return a;
}

}  // namespace

TEST(Alpha0, MatchesPublishedValueAndIndependentRoot) {
  EXPECT_NEAR(alpha0(), 1.22353, 5e-6);
  EXPECT_NEAR(alpha0(), newton_root(), 1e-12);
  EXPECT_NEAR(xbar(alpha0()), 0.0, 1e-12);
}

TEST(Xbar, SignChangesOnlyAtAlpha0) {
  for (int i = 0; i <= 2000; ++i) {
    const double a = kPi * i / 2000;
    if (std::abs(a - alpha0()) < 1e-9) continue;
    ASSERT_EQ(xbar(a) > 0, a > alpha0()) << "alpha=" << a;
  }
  EXPECT_NEAR(xbar(kPi), kPi / 2 - 1, 1e-12);
  EXPECT_NEAR(xbar(0.0), -kPi, 1e-15);
}

TEST(SelectBranch, BelowAlpha0AlwaysGreedy) {
  for (double a : {0.0, 0.3, 1.0, 1.2}) {
    for (double x : {0.0, 0.1, a / 2, a, 2.0, 5.0}) {
      EXPECT_EQ(select_branch(a, x, Found::exit), Branch::a1);
      EXPECT_EQ(select_branch(a, x, Found::treasure), Branch::a1);
    }
  }
}

TEST(SelectBranch, RendezvousWindow) {
  const double a = 1.8;
  const double xb = xbar(a);
  ASSERT_GT(xb, 0.0);
  EXPECT_EQ(select_branch(a, xb / 2, Found::exit), Branch::a2);
  EXPECT_EQ(select_branch(a, xb + 1e-6, Found::exit), Branch::a1);
  EXPECT_EQ(select_branch(a, a - xb / 2, Found::treasure), Branch::a2);
  EXPECT_EQ(select_branch(a, a - xb - 1e-6, Found::treasure), Branch::a1);
  EXPECT_EQ(select_branch(a, a + 0.1, Found::treasure), Branch::a1);

  const double b = 2.5;
  EXPECT_EQ(select_branch(b, xbar(b) / 2, Found::exit), Branch::a3);
  EXPECT_EQ(select_branch(b, b - xbar(b) / 2, Found::treasure), Branch::a3);
}

TEST(SelectBranch, FindersAgreeAtThreshold) {
  // The two finders of one configuration see x and alpha - x; they must agree
  // even when float rounding puts the two values on either side of xbar.
  for (double a : {1.3, 1.5, 1.8, 2.0, 2.3, 2.8}) {
    const double xb = xbar(a);
    for (double d : {-2e-16, -1e-16, 0.0, 1e-16, 2e-16, 4e-16}) {
      const double x_exit = xb + d;
      const double x_treasure = a - xb;
      EXPECT_EQ(select_branch(a, x_exit, Found::exit), select_branch(a, x_treasure, Found::treasure))
          << "alpha=" << a << " d=" << d;
    }
  }
}

TEST(A2Timer, Formula) {
  const double a = 1.5;
  EXPECT_NEAR(a2_timer(a, 0.1), a - 0.1 + 2 * std::sin(a / 2) + 1, 1e-15);
  EXPECT_NEAR(a2_timer(a, 10.0), 11.0, 1e-15);
}

TEST(A3Offset, RangeAndClamp) {
  const double a = 2.5;
  const double raw = a3_offset_raw(a, 1.8);
  EXPECT_NEAR(raw, a / 2 - 1.8 + std::sin(a / 2) + std::sin(a), 1e-15);
  EXPECT_NEAR(a3_offset(a, 1.8), raw, 1e-15);
  EXPECT_THROW(a3_offset(a, -5.0), std::domain_error);
  EXPECT_THROW(a3_offset(a, 10.0), std::domain_error);
  // A value a hair below zero is clamped.
  const double x0 = a / 2 + std::sin(a / 2) + std::sin(a);
  EXPECT_GE(a3_offset(a, x0 + 1e-13), 0.0);
}

TEST(Deployment, PairsSpreadEvenly) {
  const auto p = n_robot_deployment(6);
  EXPECT_EQ(p.n, 6);
  ASSERT_EQ(p.pair_starts.size(), 3u);
  EXPECT_NEAR(p.pair_starts[1].value(), 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(p.pair_starts[2].value(), 4 * kPi / 3, 1e-15);
  EXPECT_EQ(n_robot_deployment(2).pair_starts.size(), 1u);
  EXPECT_THROW(n_robot_deployment(3), std::invalid_argument);
  EXPECT_THROW(n_robot_deployment(0), std::invalid_argument);
}
