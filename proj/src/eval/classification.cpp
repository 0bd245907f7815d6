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

#include "rulegat/eval/classification.hpp"

#include <algorithm>
#include <random>

#include "rulegat/logic/truth.hpp"
#include "rulegat/train/sampling.hpp"

namespace rulegat {

std::vector<Triple> classification_negatives(const TripleStore& store, std::span<const Triple> positives,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Triple> out;
  out.reserve(positives.size());
  const KnownTriple known = [&store](const Triple& t) { return store.contains(t); };
  for (const auto& p : positives) {
    if (auto n = corrupt_triple(rng, store.num_entities(), p, known)) out.push_back(*n);
  }
  return out;
}

std::vector<LabeledScore> score_labeled(const EmbeddingState& decoded, std::span<const Triple> positives,
                                        std::span<const Triple> negatives) {
  std::vector<LabeledScore> out;
  out.reserve(positives.size() + negatives.size());
  for (const auto& t : positives) out.push_back({t.rel, triple_truth(decoded.entity, decoded.relation, t), true});
  for (const auto& t : negatives) out.push_back({t.rel, triple_truth(decoded.entity, decoded.relation, t), false});
  return out;
}

ThresholdChoice best_threshold(std::span<const LabeledScore> samples) {
  if (samples.empty()) return {};
  std::vector<LabeledScore> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.score < b.score; });
  const double n = static_cast<double>(s.size());

  // Sweep thresholds upward. Below every score all samples are predicted
  // positive, so correct = #positives; passing a score flips its samples.
  std::size_t correct = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](const auto& x) { return x.positive; }));
  ThresholdChoice best{s.front().score, -1.0};
  bool any_midpoint = false;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j].score == s[i].score) {
      if (s[j].positive) {  // now predicted negative
        --correct;
      } else {
        ++correct;
      }
      ++j;
    }
    if (j == s.size()) break;
    const double mid = 0.5 * (s[i].score + s[j].score);
    const double acc = static_cast<double>(correct) / n;
    if (acc > best.accuracy) best = {mid, acc};
    any_midpoint = true;
    i = j;
  }
  if (!any_midpoint) {
    const auto pos = std::count_if(s.begin(), s.end(), [](const auto& x) { return x.positive; });
    best = {s.front().score, static_cast<double>(pos) / n};
  }
  return best;
}

Thresholds tune_thresholds(std::span<const LabeledScore> validation, std::size_t num_relations) {
  Thresholds th;
  th.global = best_threshold(validation).threshold;
  th.delta.assign(num_relations, th.global);
  th.inherited.assign(num_relations, true);
  std::vector<std::vector<LabeledScore>> by_rel(num_relations);
  for (const auto& x : validation) {
    require(x.rel < num_relations, "tune_thresholds: relation out of range");
    by_rel[x.rel].push_back(x);
  }
  for (std::size_t r = 0; r < num_relations; ++r) {
    if (by_rel[r].empty()) continue;
    th.delta[r] = best_threshold(by_rel[r]).threshold;
    th.inherited[r] = false;
  }
  return th;
}

double average_precision(std::span<const LabeledScore> samples) {
  std::vector<LabeledScore> s(samples.begin(), samples.end());
  std::stable_sort(s.begin(), s.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return !a.positive && b.positive;
  });
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!s[k].positive) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

ClassificationReport classify(std::span<const LabeledScore> test, const Thresholds& thresholds) {
  const std::size_t nr = thresholds.delta.size();
  ClassificationReport rep;
  rep.relations.resize(nr);
  std::vector<std::vector<LabeledScore>> by_rel(nr);
  std::size_t correct = 0;
  for (const auto& x : test) {
    require(x.rel < nr, "classify: relation out of range");
    by_rel[x.rel].push_back(x);
    correct += (x.score >= thresholds.delta[x.rel]) == x.positive;
  }
  rep.count = test.size();
  rep.accuracy = test.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test.size());

  double ap_sum = 0.0;
  for (std::size_t r = 0; r < nr; ++r) {
    auto& rc = rep.relations[r];
    rc.threshold = thresholds.delta[r];
    rc.inherited = thresholds.inherited[r];
    rc.count = by_rel[r].size();
    if (rc.count == 0) continue;
    std::size_t ok = 0;
    for (const auto& x : by_rel[r]) {
      ok += (x.score >= rc.threshold) == x.positive;
      rc.positives += x.positive;
    }
    rc.accuracy = static_cast<double>(ok) / static_cast<double>(rc.count);
    if (rc.positives > 0) {
      rc.average_precision = average_precision(by_rel[r]);
      ap_sum += rc.average_precision;
      ++rep.relations_in_map;
    }
  }
  rep.map = rep.relations_in_map == 0 ? 0.0 : ap_sum / static_cast<double>(rep.relations_in_map);
  return rep;
}

}  // namespace rulegat
