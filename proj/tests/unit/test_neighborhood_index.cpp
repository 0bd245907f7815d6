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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rulegat/kg/neighborhood_index.hpp"

using namespace rulegat;
namespace oracle = rulegat::testing;

TEST(NeighborhoodIndex, MatchesBruteForceAdjacency) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_graph(rng, 12, 4, 60);
    const NeighborhoodIndex idx(g.num_entities, g.triples);
    EXPECT_EQ(idx.num_triples(), g.triples.size());
    for (EntityId e = 0; e < g.num_entities; ++e) {
      std::vector<Neighbor> out, in;
      for (const auto& t : g.triples) {
        if (t.head == e) out.push_back({t.rel, t.tail});
        if (t.tail == e) in.push_back({t.rel, t.head});
      }
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      EXPECT_TRUE(std::ranges::equal(idx.out(e), out));
      EXPECT_TRUE(std::ranges::equal(idx.in(e), in));
      for (EntityId f = 0; f < g.num_entities; ++f) {
        std::set<RelationId> rels;
        for (const auto& t : g.triples)
          if (t.head == e && t.tail == f) rels.insert(t.rel);
        EXPECT_TRUE(std::ranges::equal(idx.pair_rels(e, f), rels));
        for (RelationId r = 0; r < g.num_relations; ++r) EXPECT_EQ(idx.has(e, r, f), rels.contains(r));
      }
    }
  }
}

TEST(NeighborhoodIndex, IsolatedEntitiesHaveEmptyLists) {
  const std::vector<Triple> ts = {{0, 0, 1}};
  const NeighborhoodIndex idx(4, ts);
  EXPECT_TRUE(idx.out(3).empty());
  EXPECT_TRUE(idx.in(3).empty());
  EXPECT_TRUE(idx.pair_rels(1, 0).empty());
  EXPECT_EQ(idx.num_entities(), 4u);
}

TEST(NeighborhoodIndex, BuildsFromTrainSplitOnly) {
  const auto s = oracle::make_store(3, 1, {{0, 0, 1}}, {{1, 0, 2}}, {{2, 0, 0}});
  const auto idx = build_index(s);
  EXPECT_TRUE(idx.has(0, 0, 1));
  EXPECT_FALSE(idx.has(1, 0, 2));
  EXPECT_FALSE(idx.has(2, 0, 0));
}
