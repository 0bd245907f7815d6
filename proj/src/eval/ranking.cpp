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

#include "rulegat/eval/ranking.hpp"

#include <algorithm>
#include <cmath>

namespace rulegat {

CandidateScorer truth_scorer(const EmbeddingState& decoded) {
  return [&decoded](const Triple& q, Side side, std::span<double> scores) {
    const auto& ent = decoded.entity;
    const auto d = ent.cols();
    require(static_cast<Eigen::Index>(scores.size()) == ent.rows(), "truth_scorer: score buffer size");
    const double norm = 3.0 * std::sqrt(static_cast<double>(d));
    Eigen::Map<Vector> out(scores.data(), static_cast<Eigen::Index>(scores.size()));
    // Tail side: residual h + r - e; head side: e + r - t = e - (t - r).
    Eigen::RowVectorXd anchor = side == Side::Tail
                                    ? Eigen::RowVectorXd(ent.row(q.head) + decoded.relation.row(q.rel))
                                    : Eigen::RowVectorXd(ent.row(q.tail) - decoded.relation.row(q.rel));
    out = 1.0 - ((ent.rowwise() - anchor).cwiseAbs().rowwise().sum().array() / norm);
  };
}

FilterIndex::FilterIndex(const TripleStore& store) {
  std::vector<Triple> all;
  for (auto s : {Split::Train, Split::Valid, Split::Test}) {
    const auto& ts = store.triples(s);
    all.insert(all.end(), ts.begin(), ts.end());
  }
  build(all);
}

FilterIndex::FilterIndex(std::span<const Triple> known) { build(known); }

void FilterIndex::build(std::span<const Triple> known) {
  for (const auto& t : known) {
    tails_[key(t.head, t.rel)].push_back(t.tail);
    heads_[key(t.tail, t.rel)].push_back(t.head);
  }
  for (auto* m : {&tails_, &heads_}) {
    for (auto& [k, v] : *m) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
}

std::span<const EntityId> FilterIndex::known(const Triple& q, Side side) const {
  const auto& m = side == Side::Tail ? tails_ : heads_;
  const auto it = m.find(side == Side::Tail ? key(q.head, q.rel) : key(q.tail, q.rel));
  if (it == m.end()) return {};
  return it->second;
}

std::size_t filtered_rank(std::span<const double> scores, EntityId gold,
                          std::span<const EntityId> filtered) {
  require(gold < scores.size(), "filtered_rank: gold out of range");
  const double g = scores[gold];
  std::size_t better = 0;
  std::size_t ties = 0;
  auto f = filtered.begin();
  for (EntityId e = 0; e < scores.size(); ++e) {
    while (f != filtered.end() && *f < e) ++f;
    if (e == gold || (f != filtered.end() && *f == e)) continue;
    if (scores[e] > g) {
      ++better;
    } else if (scores[e] == g) {
      ++ties;
    }
  }
  return 1 + better + ties / 2;
}

RankResult rank_triple(const CandidateScorer& scorer, const FilterIndex& filter,
                       std::size_t num_entities, const Triple& triple) {
  std::vector<double> scores(num_entities);
  RankResult r{triple, 0, 0};
  scorer(triple, Side::Head, scores);
  r.head_rank = filtered_rank(scores, triple.head, filter.known(triple, Side::Head));
  scorer(triple, Side::Tail, scores);
  r.tail_rank = filtered_rank(scores, triple.tail, filter.known(triple, Side::Tail));
  return r;
}

LinkMetrics summarize_ranks(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw DataError("link prediction: no triples to evaluate");
  LinkMetrics m;
  for (auto r : ranks) {
    m.mrr += 1.0 / static_cast<double>(r);
    m.hits1 += r <= 1;
    m.hits3 += r <= 3;
    m.hits10 += r <= 10;
  }
  const auto n = static_cast<double>(ranks.size());
  m.mrr /= n;
  m.hits1 /= n;
  m.hits3 /= n;
  m.hits10 /= n;
  m.count = ranks.size();
  return m;
}

LinkMetrics summarize_ranks(std::span<const RankResult> results) {
  std::vector<std::size_t> ranks;
  ranks.reserve(2 * results.size());
  for (const auto& r : results) {
    ranks.push_back(r.head_rank);
    ranks.push_back(r.tail_rank);
  }
  return summarize_ranks(std::span<const std::size_t>(ranks));
}

std::vector<RankResult> rank_all(const CandidateScorer& scorer, const FilterIndex& filter,
                                 std::size_t num_entities, std::span<const Triple> triples) {
  if (triples.empty()) throw DataError("link prediction: no triples to evaluate");
  std::vector<RankResult> out(triples.size());
  const auto n = static_cast<std::ptrdiff_t>(triples.size());
#pragma omp parallel
  {
    std::vector<double> scores(num_entities);
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& t = triples[static_cast<std::size_t>(i)];
      auto& r = out[static_cast<std::size_t>(i)];
      r.triple = t;
      scorer(t, Side::Head, scores);
      r.head_rank = filtered_rank(scores, t.head, filter.known(t, Side::Head));
      scorer(t, Side::Tail, scores);
      r.tail_rank = filtered_rank(scores, t.tail, filter.known(t, Side::Tail));
    }
  }
  return out;
}

std::vector<RankResult> rank_all_reference(const CandidateScorer& scorer, const FilterIndex& filter,
                                           std::size_t num_entities, std::span<const Triple> triples) {
  if (triples.empty()) throw DataError("link prediction: no triples to evaluate");
  std::vector<RankResult> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.push_back(rank_triple(scorer, filter, num_entities, t));
  return out;
}

ReciprocalRankMoments uniform_reciprocal_rank(std::size_t n) {
  require(n > 0, "uniform_reciprocal_rank: n must be positive");
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    s1 += 1.0 / static_cast<double>(k);
    s2 += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  }
  const auto dn = static_cast<double>(n);
  const double mean = s1 / dn;
  return {mean, s2 / dn - mean * mean};
}

}  // namespace rulegat
