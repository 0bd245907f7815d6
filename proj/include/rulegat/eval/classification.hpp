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

#include <cstdint>
#include <span>
#include <vector>

#include "rulegat/encoder/params.hpp"
#include "rulegat/kg/triple_store.hpp"

namespace rulegat {

/// A scored triple with its gold label.
struct LabeledScore {
  RelationId rel = 0;
  double score = 0.0;
  bool positive = false;
};

/// One corruption per positive (head or tail, fair coin), rejected against
/// every known triple. Positives with no valid corruption are skipped.
std::vector<Triple> classification_negatives(const TripleStore& store, std::span<const Triple> positives,
                                             std::uint64_t seed);

/// Truth-scored, labeled positives followed by their negatives.
std::vector<LabeledScore> score_labeled(const EmbeddingState& decoded, std::span<const Triple> positives,
                                        std::span<const Triple> negatives);

struct ThresholdChoice {
  double threshold = 0.0;
  double accuracy = 0.0;
};

/// Maximizes accuracy of `score >= threshold` over midpoints between
/// consecutive distinct sorted scores; ties go to the smallest threshold. With
/// a single distinct score that score is the threshold.
ThresholdChoice best_threshold(std::span<const LabeledScore> samples);

struct Thresholds {
  std::vector<double> delta;      ///< per relation
  std::vector<bool> inherited;    ///< relation had no validation data
  double global = 0.0;
};

Thresholds tune_thresholds(std::span<const LabeledScore> validation, std::size_t num_relations);

/// Average precision of a ranking by score (descending). Equal scores are
/// ordered negatives first. Returns 0 when there are no positives.
double average_precision(std::span<const LabeledScore> samples);

struct RelationClassification {
  std::size_t count = 0;
  std::size_t positives = 0;
  double accuracy = 0.0;
  double average_precision = 0.0;
  double threshold = 0.0;
  bool inherited = false;
};

struct ClassificationReport {
  std::vector<RelationClassification> relations;  ///< indexed by relation id
  double accuracy = 0.0;
  double map = 0.0;  ///< mean AP over relations with at least one positive
  std::size_t count = 0;
  std::size_t relations_in_map = 0;
};

ClassificationReport classify(std::span<const LabeledScore> test, const Thresholds& thresholds);

}  // namespace rulegat
