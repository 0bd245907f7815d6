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

#include <array>
#include <filesystem>
#include <vector>

#include "rulegat/kg/neighborhood_index.hpp"
#include "rulegat/rules/rule.hpp"

namespace rulegat {

// Association rule mining over the training graph.
//
// Self-loop triples (h == t) never take part in mining, and a sample whose
// head relation repeats a body relation is discarded. Transitivity chains
// additionally require x != z.

struct InferenceSample {
  Triple first;   ///< first.rel < second.rel
  Triple second;
};

struct AntiSymmetrySample {
  Triple forward;   ///< forward.rel < backward.rel
  Triple backward;
};

struct TransitivitySample {
  Triple first;
  Triple second;
  Triple witness;
};

struct RuleSamples {
  std::vector<InferenceSample> inference;
  std::vector<AntiSymmetrySample> antisymmetry;
  std::vector<TransitivitySample> transitivity;
};

/// Enumerates every rule sample in the index's split.
RuleSamples extract_samples(const NeighborhoodIndex& index);

/// Projects samples onto relation tuples and counts them. Each unordered
/// inference sample supports both directed candidates. Sorted by frequency
/// descending, ties by relation tuple then kind. Candidates are unscored.
std::vector<RuleCandidate> extract_candidates(const RuleSamples& samples);

/// Support, confidence and promotion from entity-level counts over the
/// neighborhood index. Undefined scores leave `scored == false` and a reason
/// in `rejection`.
RuleCandidate score_candidate(RuleCandidate candidate, const NeighborhoodIndex& index);

/// Computes the scores from already-known counts.
void apply_scores(RuleCandidate& candidate);

/// Fused single pass producing the same scored, ordered list as
/// extract_samples -> extract_candidates -> score_candidate. Parallel over
/// entities; output does not depend on the worker count.
std::vector<RuleCandidate> mine_candidates(const NeighborhoodIndex& index);

/// Serial reference for mine_candidates built from the step-wise operations.
std::vector<RuleCandidate> mine_candidates_reference(const NeighborhoodIndex& index);

/// Keeps scored candidates with promotion >= threshold. Throws ConfigError for
/// threshold <= 0.
RuleSet filter_rules(const std::vector<RuleCandidate>& candidates, double threshold);

/// Instantiates every rule at each entity binding whose body triples are all
/// in the index's split. Anti-symmetry rules ground in both directions.
/// The result is sorted and duplicate free.
GroundRules ground_rules(const RuleSet& rules, const NeighborhoodIndex& index);

struct RuleKindCounts {
  std::array<std::size_t, 3> by_kind{};
  std::size_t total() const { return by_kind[0] + by_kind[1] + by_kind[2]; }
};

RuleKindCounts count_by_kind(const RuleSet& rules);
RuleKindCounts count_by_kind(const GroundRules& rules);

// Text persistence. Names are resolved through the store vocabularies.

/// `kind<TAB>body_rels<TAB>head_rel<TAB>support<TAB>confidence<TAB>promotion`,
/// body relations joined by ','.
void write_rules(const std::filesystem::path& path, const RuleSet& rules,
                 const TripleStore& store);
RuleSet read_rules(const std::filesystem::path& path, const TripleStore& store,
                   double threshold);

/// `kind<TAB>h<TAB>r<TAB>t<TAB>h<TAB>r<TAB>t[<TAB>h<TAB>r<TAB>t]`, head last.
void write_ground_rules(const std::filesystem::path& path, const GroundRules& rules,
                        const TripleStore& store);
GroundRules read_ground_rules(const std::filesystem::path& path, const TripleStore& store);

}  // namespace rulegat
