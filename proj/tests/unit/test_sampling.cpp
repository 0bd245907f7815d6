// Copyright 2026 The rulegat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rulegat/train/sampling.hpp"

using namespace rulegat;
namespace oracle = rulegat::testing;

TEST(Sampling, CapitalOfCorruptionReplacesOneEnd) {
  TripleStore s;
  s.add(Split::Train, "Berlin", "Capital-Of", "Germany");
  s.add(Split::Train, "Paris", "Capital-Of", "France");
  s.intern_entity("Madrid");
  s.intern_entity("Spain");
  const Triple pos{*s.entities().find("Berlin"), 0, *s.entities().find("Germany")};
  const KnownTriple known = [&](const Triple& t) { return s.contains(t); };

  std::mt19937_64 rng(1);
  bool saw_france = false;
  for (int i = 0; i < 200; ++i) {
    const auto neg = corrupt_triple(rng, s.num_entities(), pos, known);
    ASSERT_TRUE(neg.has_value());
    EXPECT_FALSE(s.contains(*neg));
    EXPECT_EQ(neg->rel, pos.rel);
    EXPECT_TRUE(neg->head == pos.head || neg->tail == pos.tail);
    if (neg->head == pos.head && s.entities().name(neg->tail) == "France") saw_france = true;
  }
  EXPECT_TRUE(saw_france);  // (Berlin, Capital-Of, France)
}

TEST(Sampling, CompleteGraphIsSkipped) {
  // Both entities linked every way: no corruption can leave the graph.
  const auto s = oracle::make_store(2, 1, {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}});
  const KnownTriple known = [&](const Triple& t) { return s.contains(t); };
  std::mt19937_64 rng(2);
  CorruptionStats stats;
  for (int i = 0; i < 10; ++i) EXPECT_FALSE(corrupt_triple(rng, 2, {0, 0, 1}, known, &stats).has_value());
  EXPECT_EQ(stats.skipped, 10u);
}

TEST(Sampling, HeadAndTailAreReplacedEvenly) {
  const auto s = oracle::make_store(50, 1, {{0, 0, 1}});
  const KnownTriple known = [&](const Triple& t) { return s.contains(t); };
  std::mt19937_64 rng(3);
  CorruptionStats stats;
  for (int i = 0; i < 10000; ++i) corrupt_triple(rng, 50, {0, 0, 1}, known, &stats);
  const double ratio = static_cast<double>(stats.head_replaced) / 10000.0;
  EXPECT_GE(ratio, 0.48);
  EXPECT_LE(ratio, 0.52);
  EXPECT_EQ(stats.head_replaced + stats.tail_replaced, 10000u);
}

TEST(Sampling, InferenceRuleCorruptionIsConsistent) {
  const GroundRule g{RuleKind::Inference, {Triple{0, 0, 1}, Triple{0, 1, 1}, Triple{}}};
  const GroundRuleSet grounded = {g};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const auto c = corrupt_rule(rng, 10, g, grounded);
    ASSERT_TRUE(c.has_value());
    EXPECT_NE(*c, g);
    EXPECT_EQ(c->triples[0].head, c->triples[1].head);
    EXPECT_EQ(c->triples[0].tail, c->triples[1].tail);
    EXPECT_TRUE(c->triples[0].head == 0 || c->triples[0].tail == 1);
    EXPECT_EQ(c->triples[2], Triple{});
  }
}

TEST(Sampling, AntiSymmetryRuleCorruptionKeepsTheSwap) {
  const GroundRule g{RuleKind::AntiSymmetry, {Triple{2, 0, 5}, Triple{5, 1, 2}, Triple{}}};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto c = corrupt_rule(rng, 10, g, {g});
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->triples[0].head, c->triples[1].tail);
    EXPECT_EQ(c->triples[0].tail, c->triples[1].head);
  }
}

TEST(Sampling, TransitivityCorruptionLeavesTheMiddleAlone) {
  const GroundRule g{RuleKind::Transitivity, {Triple{0, 0, 1}, Triple{1, 1, 2}, Triple{0, 2, 2}}};
  std::mt19937_64 rng(6);
  CorruptionStats stats;
  for (int i = 0; i < 1000; ++i) {
    const auto c = corrupt_rule(rng, 10, g, {g}, &stats);
    ASSERT_TRUE(c.has_value());
    const auto& t = c->triples;
    EXPECT_EQ(t[0].tail, 1u);
    EXPECT_EQ(t[1].head, 1u);
    EXPECT_EQ(t[0].head, t[2].head);
    EXPECT_EQ(t[1].tail, t[2].tail);
    EXPECT_TRUE(t[0].head == 0 || t[2].tail == 2);
  }
  EXPECT_GT(stats.head_replaced, 400u);
  EXPECT_GT(stats.tail_replaced, 400u);
}

TEST(Sampling, RuleCorruptionRejectsGroundedInstances) {
  // With two entities every corruption of x is either the rule itself or the
  // other grounded instance.
  const GroundRule a{RuleKind::Inference, {Triple{0, 0, 1}, Triple{0, 1, 1}, Triple{}}};
  const GroundRule b{RuleKind::Inference, {Triple{1, 0, 1}, Triple{1, 1, 1}, Triple{}}};
  const GroundRule c{RuleKind::Inference, {Triple{0, 0, 0}, Triple{0, 1, 0}, Triple{}}};
  std::mt19937_64 rng(7);
  CorruptionStats stats;
  for (int i = 0; i < 20; ++i) EXPECT_FALSE(corrupt_rule(rng, 2, a, {a, b, c}, &stats).has_value());
  EXPECT_EQ(stats.skipped, 20u);
}

TEST(Sampling, HingeTerm) {
  EXPECT_DOUBLE_EQ(hinge_term(0.25, 0.9, 0.5), 0.0);
  EXPECT_NEAR(hinge_term(0.25, 0.9, 0.7), 0.05, 1e-15);
  EXPECT_DOUBLE_EQ(hinge_term(1.0, 0.2, 0.8), 1.6);
  EXPECT_EQ(hinge_term(0.25, 0.75, 0.5), 0.0);  // exactly at the margin
}
