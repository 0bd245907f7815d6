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
#include <limits>
#include <string>
#include <vector>

#include "rulegat/encoder/graph.hpp"
#include "rulegat/kg/neighborhood_index.hpp"
#include "rulegat/kg/triple_store.hpp"
#include "rulegat/train/model.hpp"
#include "rulegat/train/sampling.hpp"

namespace rulegat {

/// Graph structures the encoder runs on, derived from the training split,
/// the rules and the ablation mode.
struct EncoderContext {
  NeighborhoodIndex index;
  LogicWeightTable logic;
  EdgeGraph graph;

  /// Logic attention is built only when the mode routes rules into the
  /// encoder; otherwise the table is empty.
  static EncoderContext build(const TripleStore& store, const RuleSet& rules, const TrainConfig& config);
};

struct StepInfo {
  int epoch = 0;
  std::size_t step = 0;
  double loss = 0.0;
  double attention_sum_error = 0.0;  ///< max |sum alpha - 1| in this batch
  double max_entity_norm = 0.0;      ///< after projection
  double max_relation_norm = 0.0;
  bool warmup = false;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;  ///< mean over batches
  double valid_hits10 = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  bool warmup = false;

  std::string to_json() const;
};

struct TrainHooks {
  std::function<void(const StepInfo&)> on_step;    ///< called after every update
  std::function<void(const EpochRecord&)> on_epoch;
};

struct TrainResult {
  Model model;  ///< best validation snapshot (last state without validation data)
  int best_epoch = 0;
  double best_valid_hits10 = std::numeric_limits<double>::quiet_NaN();
  int epochs_run = 0;
  bool stopped_early = false;
  std::vector<EpochRecord> log;
  std::size_t pool_triples = 0;
  std::size_t pool_rules = 0;
  bool logic_all_zero = true;
  CorruptionStats corruption;
};

/// Joint training of embeddings and encoder weights on the hinge loss. Rules
/// and ground rules are consulted according to config.mode.
TrainResult train(const TrainConfig& config, const TripleStore& store, const RuleSet& rules,
                  const GroundRules& ground, const TrainHooks& hooks = {});

/// Decoder view of all entities and relations, no dropout.
EmbeddingState decode_all(const Model& model, const EdgeGraph& graph);

}  // namespace rulegat
