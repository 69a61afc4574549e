#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "evac/verify.hpp"

using namespace evac;

TEST(Sweep, WirelessRightAngleIsTight) {
  const auto r = sweep(Model::wireless, kPi / 2, 8192, 40);
  EXPECT_NEAR(r.max_time, 5.3992235, 2e-3);
  EXPECT_TRUE(r.ub_ok);
  EXPECT_TRUE(r.tight);
  EXPECT_GE(r.max_time, r.grid_max);
  // The argmax reproduces the maximum.
  EXPECT_NEAR(evac_time_at(Model::wireless, kPi / 2, r.argmax_exit), r.max_time, 1e-12);
}

TEST(Sweep, FaceToFaceWithinBound) {
  const auto r = sweep(Model::f2f, 2.0, 8192, 40);
  EXPECT_LE(r.max_time, f2f_ub(2.0) + 1e-9);
  EXPECT_TRUE(r.ub_ok);
  EXPECT_TRUE(r.lb_consistent);
}

TEST(Sweep, ZeroSeparationWorstIsAntipodal) {
  for (Model m : {Model::wireless, Model::f2f}) {
    const auto r = sweep(m, 0.0, 256, 0);
    EXPECT_NEAR(r.max_time, 1 + kPi, 1e-9) << to_string(m);
    EXPECT_GE(r.evaluated, 256);
  }
}

TEST(Sweep, RejectsBadArguments) {
  EXPECT_THROW(sweep(Model::f2f, 1.0, 255, 0), std::invalid_argument);
  EXPECT_THROW(sweep(Model::f2f, 1.0, 256, -1), std::invalid_argument);
  EXPECT_THROW(sweep(Model::f2f, 3.5, 256, 0), std::invalid_argument);
}

TEST(Sweep, CriticalAnglesLieOnCircle) {
  for (Model m : {Model::wireless, Model::f2f}) {
    for (double a : {0.5, 1.5, 2.5}) {
      const auto v = critical_exit_angles(m, a);
      EXPECT_FALSE(v.empty());
      for (double e : v) {
        EXPECT_GE(e, 0.0);
        EXPECT_LT(e, kTwoPi);
      }
    }
  }
}

TEST(Symmetry, MirrorImagesAgree) {
  EXPECT_TRUE(symmetry_check(Model::f2f, 2.5, 1024).pass);
  EXPECT_TRUE(symmetry_check(Model::wireless, 1.0, 1024).pass);
  EXPECT_TRUE(symmetry_check(Model::wireless, 0.0, 256).pass);
  EXPECT_TRUE(symmetry_check(Model::f2f, 0.0, 256).pass);
}

TEST(Symmetry, AntipodalWirelessStartIsNotMirrorSymmetric) {
  // Both robots sweep the same way from antipodal points, so mirroring the
  // placement is not a symmetry of the protocol.
  const auto s = symmetry_check(Model::wireless, 2.4, 1024);
  EXPECT_FALSE(s.pass);
  EXPECT_GT(s.max_neg, s.max_pos);
}

TEST(Figure1, RowsMatchClosedForms) {
  const auto rows = figure1_table({0.0, kTwoThirdsPi, kPi});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].wireless_ub, 4.1415927, 5e-8);
  EXPECT_NEAR(rows[0].f2f_ub, 4.1415927, 5e-8);
  EXPECT_NEAR(rows[0].f2f_lb, 2.0471976, 5e-8);
  EXPECT_NEAR(rows[1].wireless_ub, 5.5112992, 5e-8);
  EXPECT_NEAR(rows[1].f2f_ub, 5.6924708, 1e-6);
  EXPECT_NEAR(rows[1].f2f_lb, 5.5112992, 5e-8);
  EXPECT_NEAR(rows[2].wireless_ub, 5.0, 1e-12);
  EXPECT_NEAR(rows[2].f2f_ub, 5.5707963, 5e-8);
  EXPECT_NEAR(rows[2].f2f_lb, 4.0471976, 5e-8);
}

TEST(Figure1, LinspaceEndpointsExact) {
  const auto v = linspace(0.0, kPi, 256);
  ASSERT_EQ(v.size(), 257u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), kPi);
  EXPECT_EQ(linspace(1.0, 2.0, 0).size(), 1u);
}

TEST(Csv, BoundsFormat) {
  std::ostringstream os;
  write_bounds_csv(os, figure1_table({0.0}), true);
  EXPECT_EQ(os.str(), "alpha,wireless_ub,f2f_ub,f2f_lb,ub_gap\n0,4.14159265359,4.14159265359,2.0471975512,0\n");
}

TEST(Csv, SweepFormatAndDeterminism) {
  auto once = [] {
    std::vector<SweepResult> rows{sweep(Model::f2f, 1.0, 512, 10), sweep(Model::wireless, 2.0, 512, 10)};
    std::ostringstream os;
    write_sweep_csv(os, rows);
    return os.str();
  };
  const std::string a = once();
  EXPECT_EQ(a, once());
  EXPECT_EQ(a.substr(0, a.find('\n')), "alpha,max_time,bound,argmax_exit_angle,ub_ok,tight");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 3);
}

TEST(ParallelMap, PreservesOrderAndRethrows) {
  std::vector<double> in(100);
  for (int i = 0; i < 100; ++i) in[i] = i;
  const auto out = parallel_map(in, [](double v) { return 2 * v; });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[i], 2.0 * i);
  EXPECT_THROW(parallel_map(in,
                            [](double v) {
                              if (v == 42) throw std::runtime_error("boom");
                              return v;
                            }),
               std::runtime_error);
}
