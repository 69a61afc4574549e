#include <gtest/gtest.h>

#include "evac/knowledge.hpp"

using namespace evac;

namespace {

Content exit_here() { return {true, false}; }
Content treasure_here() { return {false, true}; }

bool has_candidate(const Belief& b, double a) {
  for (Angle c : b.candidates()) {
    if (same_angle(c, Angle(a), 1e-12)) return true;
  }
  return false;
}

}  // namespace

TEST(Belief, RestrictIntersectsAndPromotes) {
  Belief b;
  EXPECT_EQ(b.status(), Belief::Status::unknown);
  b.restrict_to({Angle(1.0), Angle(2.0), Angle(1.0)});
  EXPECT_EQ(b.status(), Belief::Status::candidates);
  EXPECT_EQ(b.candidates().size(), 2u);
  b.restrict_to({Angle(2.0), Angle(3.0)});
  ASSERT_EQ(b.candidates().size(), 1u);
  EXPECT_TRUE(b.promote_singleton());
  EXPECT_TRUE(b.is_known());
  EXPECT_DOUBLE_EQ(b.known().value(), 2.0);
  EXPECT_FALSE(b.set_known(Angle(3.0)));  // first knowledge wins
  EXPECT_DOUBLE_EQ(b.known().value(), 2.0);
}

TEST(Knowledge, ExitFindingNamesTwoTreasureCandidates) {
  KnowledgeState k(1.0);
  k.observe(Angle(0.5), exit_here());
  ASSERT_TRUE(k.exit().is_known());
  EXPECT_DOUBLE_EQ(k.exit().known().value(), 0.5);
  ASSERT_EQ(k.treasure().status(), Belief::Status::candidates);
  EXPECT_TRUE(has_candidate(k.treasure(), 1.5));
  EXPECT_TRUE(has_candidate(k.treasure(), kTwoPi - 0.5));
  EXPECT_EQ(k.open_candidates().size(), 2u);
  EXPECT_EQ(k.drain_promotions().size(), 1u);
  EXPECT_TRUE(k.drain_promotions().empty());
}

TEST(Knowledge, ExploredCandidateIsEliminated) {
  KnowledgeState k(1.0);
  k.add_explored_arc(Angle(0.0), Dir::pos, 1.0);
  k.observe(Angle(1.0), treasure_here());
  // Exit candidates are 0 (explored) and 2; the survivor is promoted.
  ASSERT_TRUE(k.exit().is_known());
  EXPECT_NEAR(k.exit().known().value(), 2.0, 1e-15);
  const auto log = k.drain_promotions();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].item, KnowledgeState::Item::treasure);
  EXPECT_EQ(log[1].item, KnowledgeState::Item::exit);
}

TEST(Knowledge, EliminationIsExact) {
  KnowledgeState k(1.0);
  k.add_explored_arc(Angle(0.0), Dir::pos, 1.0 - 1e-10);
  k.observe(Angle(2.0), exit_here());
  // Candidate 1.0 lies just past the explored arc and must stay open.
  EXPECT_EQ(k.treasure().status(), Belief::Status::candidates);
  EXPECT_TRUE(has_candidate(k.treasure(), 1.0));
  EXPECT_TRUE(has_candidate(k.treasure(), 3.0));
}

TEST(Knowledge, RecordDefersInference) {
  KnowledgeState k(0.2);
  k.add_explored_arc(Angle(kTwoPi - 0.1), Dir::pos, 0.1);
  k.record(Angle(kTwoPi - 0.1), exit_here());
  k.record(Angle(0.1), treasure_here());
  k.infer();
  EXPECT_NEAR(k.exit().known().value(), kTwoPi - 0.1, 1e-15);
  EXPECT_NEAR(k.treasure().known().value(), 0.1, 1e-15);
}

TEST(Knowledge, MergeCombinesArcsAndBeliefs) {
  KnowledgeState a(1.0), b(1.0);
  a.add_explored_arc(Angle(0.0), Dir::pos, 0.5);
  a.observe(Angle(0.5), exit_here());
  b.add_explored_arc(Angle(0.0), Dir::neg, 0.5);
  a.merge(b);
  // Treasure candidates are 1.5 and 2pi - 0.5; the second is the edge of b's arc.
  ASSERT_TRUE(a.treasure().is_known());
  EXPECT_NEAR(a.treasure().known().value(), 1.5, 1e-15);
  EXPECT_NEAR(a.explored().measure(), 1.0, 1e-12);
}

TEST(Knowledge, MergeTransfersTaken) {
  KnowledgeState a(1.0), b(1.0);
  b.set_holds(true);
  EXPECT_TRUE(b.treasure_taken());
  a.merge(b);
  EXPECT_TRUE(a.treasure_taken());
  EXPECT_FALSE(a.holds_treasure());
}

TEST(Knowledge, DeducedExitPinsTreasure) {
  KnowledgeState k(2.0);
  k.deduce_exit(Angle(1.0));
  ASSERT_TRUE(k.exit().is_known());
  EXPECT_EQ(k.treasure().status(), Belief::Status::candidates);
}

TEST(Knowledge, ZeroSeparationFindsBothAtOnce) {
  KnowledgeState k(0.0);
  k.observe(Angle(3.0), {true, true});
  ASSERT_TRUE(k.exit().is_known());
  ASSERT_TRUE(k.treasure().is_known());
  EXPECT_DOUBLE_EQ(k.treasure().known().value(), 3.0);
}
