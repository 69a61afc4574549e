#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "evac/engine.hpp"

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

void expect_clean(const SimResult& r) {
  EXPECT_TRUE(r.audit.delivered_at_true_exit);
  EXPECT_TRUE(r.audit.speed_respected);
  EXPECT_TRUE(r.audit.continuity);
  EXPECT_TRUE(r.audit.knowledge_sound);
}

}  // namespace

TEST(Engine, WirelessTreasureFirstThenForwardExit) {
  const auto r = simulate(cfg(Model::wireless, kPi / 2, 0.3 + kPi / 2, -1));
  EXPECT_NEAR(r.evac_time, 2.7142136, 1e-7);
  expect_clean(r);
}

TEST(Engine, FaceToFaceExitFirstTreasureAhead) {
  const auto r = simulate(cfg(Model::f2f, 1.0, 0.4, +1));
  EXPECT_NEAR(r.evac_time, 3.3177021, 1e-7);
  EXPECT_TRUE(r.took(Path::a1));
  expect_clean(r);
}

TEST(Engine, CoincidentTreasureAndExit) {
  for (Model m : {Model::wireless, Model::f2f}) {
    const auto r = simulate(cfg(m, 0.0, kPi / 3, +1));
    EXPECT_NEAR(r.evac_time, 2.0471976, 1e-7) << to_string(m);
    expect_clean(r);
  }
}

TEST(Colocation, MeetAtCentreAfterReturningChords) {
  // Both leave the perimeter at t = 1.5 and reach the centre at t = 2.5.
  const Point p = on_circle(Angle(0.3)), q = on_circle(Angle(2.0));
  const std::vector<TrajectorySegment> a{TrajectorySegment::chord(0.0, kCenter, p),
                                         TrajectorySegment::wait(1.0, p, 0.5),
                                         TrajectorySegment::chord(1.5, p, kCenter)};
  const std::vector<TrajectorySegment> b{TrajectorySegment::chord(0.0, kCenter, q),
                                         TrajectorySegment::wait(1.0, q, 0.5),
                                         TrajectorySegment::chord(1.5, q, kCenter)};
  const auto ev = colocation_events(a, b);
  ASSERT_EQ(ev.size(), 2u);  // together at the start, then apart until the centre
  EXPECT_EQ(ev[0].time, 0.0);
  EXPECT_NEAR(ev[1].time, 2.5, 1e-9);
  EXPECT_TRUE(near(ev[1].at, kCenter));
}

TEST(Colocation, OppositeChordsMeetHalfway) {
  const Point i = on_circle(Angle(0.0)), d = on_circle(Angle(2.0));
  const double len = distance(i, d);
  const std::vector<TrajectorySegment> a{TrajectorySegment::chord(0.0, i, d)};
  const std::vector<TrajectorySegment> b{TrajectorySegment::chord(0.0, d, i)};
  const auto ev = colocation_events(a, b);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_NEAR(ev[0].time, len / 2, 1e-12);
}

TEST(Colocation, CrossingChordsAtDifferentTimesDoNotMeet) {
  const std::vector<TrajectorySegment> a{
      TrajectorySegment::chord(0.0, on_circle(Angle(0.0)), on_circle(Angle(kPi)))};
  const std::vector<TrajectorySegment> b{
      TrajectorySegment::chord(0.5, on_circle(Angle(kPi / 2)), on_circle(Angle(3 * kPi / 2)))};
  EXPECT_TRUE(colocation_events(a, b).empty());
}

TEST(Colocation, SweepersInOppositeDirectionsMeetAtAntipode) {
  const std::vector<TrajectorySegment> a{TrajectorySegment::arc(1.0, Angle(0.0), Dir::pos, 4.0)};
  const std::vector<TrajectorySegment> b{TrajectorySegment::arc(1.0, Angle(0.0), Dir::neg, 4.0)};
  const auto ev = colocation_events(a, b);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0].time, 1.0, 1e-12);
  EXPECT_NEAR(ev[1].time, 1.0 + kPi, 1e-12);
}

TEST(Colocation, ChordEndpointOnSweep) {
  // b reaches angle 1.0 by chord exactly when sweeper a passes it.
  const std::vector<TrajectorySegment> a{TrajectorySegment::arc(1.0, Angle(0.0), Dir::pos, 3.0)};
  const Point s = on_circle(Angle(3.0)), t = on_circle(Angle(1.0));
  const double start = 2.0 - distance(s, t);
  const std::vector<TrajectorySegment> b{TrajectorySegment::wait(0.0, s, start),
                                         TrajectorySegment::chord(start, s, t)};
  const auto ev = colocation_events(a, b);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_NEAR(ev[0].time, 2.0, 1e-9);
}

TEST(EnginePaths, RendezvousOutcomesAreReachable) {
  struct Case {
    double alpha, exit;
    int orient;
    Path path;
  };
  const Case cases[] = {{1.8, 5.5606, +1, Path::a2_meet},
                        {1.8, 2.6861, +1, Path::a2_timeout},
                        {2.5, 5.4287, +1, Path::a3_meet},
                        {2.5, 1.2849, +1, Path::a3_no_meet}};
  for (const auto& c : cases) {
    const auto r = simulate(cfg(Model::f2f, c.alpha, c.exit, c.orient));
    EXPECT_TRUE(r.took(c.path)) << c.alpha << ' ' << c.exit;
    EXPECT_LE(r.evac_time, 1.0 + kPi - c.alpha / 2 + 3 * std::sin(c.alpha / 2) + 1e-9);
    expect_clean(r);
  }
}

TEST(EnginePaths, WirelessRaceAndConfidentFinish) {
  const auto r = simulate(cfg(Model::wireless, 1.0, 2.0, +1));
  EXPECT_TRUE(r.took(Path::confident));
  expect_clean(r);
}

TEST(EngineTrace, SegmentsAreContinuousAndUnitSpeed) {
  const auto r = simulate(cfg(Model::f2f, 2.5, 1.2849, +1));
  for (const auto& traj : r.trajectories) {
    ASSERT_FALSE(traj.empty());
    EXPECT_TRUE(near(traj.front().position_at(0.0), kCenter));
    for (std::size_t i = 1; i < traj.size(); ++i) {
      EXPECT_NEAR(traj[i].start_time, traj[i - 1].end_time(), 1e-9);
      EXPECT_TRUE(near(traj[i].position_at(traj[i].start_time), traj[i - 1].end_point(), 1e-9));
    }
    for (const auto& s : traj) {
      if (s.kind == TrajectorySegment::Kind::chord) {
        EXPECT_NEAR(s.duration, distance(s.from, s.to), 1e-12);
      }
    }
  }
  ASSERT_FALSE(r.events.empty());
  EXPECT_EQ(r.events.back().kind, SimEvent::Kind::evacuate);
  for (std::size_t i = 1; i < r.events.size(); ++i) EXPECT_LE(r.events[i - 1].time, r.events[i].time);
}

TEST(EngineTrace, FirstPerimeterContactAtTimeOne) {
  const auto r = simulate(cfg(Model::wireless, 2.0, 1.0, +1));
  for (const auto& e : r.events) {
    if (e.kind == SimEvent::Kind::discover) {
      EXPECT_GE(e.time, 1.0 - 1e-12);
    }
  }
}

TEST(EngineProperties, RandomConfigsTerminateCleanlyWithinCap) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(0.0, kPi), ue(0.0, kTwoPi);
  for (int i = 0; i < 400; ++i) {
    const Model m = i % 2 ? Model::f2f : Model::wireless;
    const auto c = cfg(m, ua(rng), ue(rng), i % 4 < 2 ? +1 : -1);
    const auto r = simulate(c);
    expect_clean(r);
    // The carrier walks at least 1 to the treasure, then the chord to the exit.
    EXPECT_GE(r.evac_time, 1.0 + 2 * std::sin(c.alpha / 2) - 1e-12);
    EXPECT_LT(r.evac_time, kTimeCap);
    if (m == Model::f2f) {
      EXPECT_LE(r.evac_time, 1.0 + kPi - c.alpha / 2 + 3 * std::sin(c.alpha / 2) + 1e-9);
    }
  }
}

TEST(EngineProperties, AlphaZeroBothModelsAgree) {
  for (double e : {0.0, 0.5, 2.0, 4.0, 6.0}) {
    const double w = simulate(cfg(Model::wireless, 0.0, e, +1)).evac_time;
    const double f = simulate(cfg(Model::f2f, 0.0, e, +1)).evac_time;
    EXPECT_NEAR(w, f, 1e-12) << e;
  }
}

TEST(EngineErrors, InvalidConfigurationRejected) {
  EXPECT_THROW(simulate(cfg(Model::wireless, -0.1, 0.0, +1)), std::invalid_argument);
  EXPECT_THROW(simulate(cfg(Model::wireless, 4.0, 0.0, +1)), std::invalid_argument);
  EXPECT_THROW(simulate(cfg(Model::f2f, 1.0, 0.0, 0)), std::invalid_argument);
}
