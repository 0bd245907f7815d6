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

#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rulegat/encoder/params.hpp"
#include "rulegat/kg/triple_store.hpp"

namespace rulegat {

enum class Side : std::uint8_t { Head, Tail };

/// Fills `scores[e]` with the plausibility of the query triple after putting
/// entity e on `side`. Higher is better. Must be safe to call concurrently.
using CandidateScorer = std::function<void(const Triple& query, Side side, std::span<double> scores)>;

/// Scores candidates with the translational triple truth on decoder
/// embeddings. The state must outlive the scorer.
CandidateScorer truth_scorer(const EmbeddingState& decoded);

/// Known entities for every (anchor, relation) pair, over all splits.
class FilterIndex {
 public:
  FilterIndex() = default;
  explicit FilterIndex(const TripleStore& store);
  explicit FilterIndex(std::span<const Triple> known);

  /// Sorted entities e such that the query with e on `side` is known.
  std::span<const EntityId> known(const Triple& query, Side side) const;

 private:
  static std::uint64_t key(EntityId anchor, RelationId rel) {
    return (static_cast<std::uint64_t>(anchor) << 32) | rel;
  }
  void build(std::span<const Triple> known);

  std::unordered_map<std::uint64_t, std::vector<EntityId>> tails_;  // (head, rel)
  std::unordered_map<std::uint64_t, std::vector<EntityId>> heads_;  // (tail, rel)
};

/// 1 + #(strictly better) + floor(#ties / 2) over candidates other than
/// `gold` and outside `filtered`. Ties are exact score equality.
std::size_t filtered_rank(std::span<const double> scores, EntityId gold,
                          std::span<const EntityId> filtered);

struct RankResult {
  Triple triple;
  std::size_t head_rank = 0;
  std::size_t tail_rank = 0;
};

/// Filtered head and tail ranks of one triple.
RankResult rank_triple(const CandidateScorer& scorer, const FilterIndex& filter,
                       std::size_t num_entities, const Triple& triple);

struct LinkMetrics {
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
  std::size_t count = 0;  ///< number of ranks (two per triple)
};

LinkMetrics summarize_ranks(std::span<const std::size_t> ranks);
LinkMetrics summarize_ranks(std::span<const RankResult> results);

/// Ranks every triple in parallel. Empty input is a DataError.
std::vector<RankResult> rank_all(const CandidateScorer& scorer, const FilterIndex& filter,
                                 std::size_t num_entities, std::span<const Triple> triples);

/// Single-threaded reference of rank_all.
std::vector<RankResult> rank_all_reference(const CandidateScorer& scorer, const FilterIndex& filter,
                                           std::size_t num_entities, std::span<const Triple> triples);

inline LinkMetrics link_prediction(const CandidateScorer& scorer, const FilterIndex& filter,
                                   std::size_t num_entities, std::span<const Triple> triples) {
  return summarize_ranks(rank_all(scorer, filter, num_entities, triples));
}

/// Mean and variance of 1/rank when the gold's rank among n candidates is
/// uniform on 1..n.
struct ReciprocalRankMoments {
  double mean = 0.0;
  double variance = 0.0;
};
ReciprocalRankMoments uniform_reciprocal_rank(std::size_t n);

}  // namespace rulegat
