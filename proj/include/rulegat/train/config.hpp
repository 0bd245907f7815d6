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
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace rulegat {

/// Which parts of the rule machinery are active.
///   Full    rules in the loss and in the encoder's logic attention
///   TriOnly neither
///   OptOnly rules in the loss only
///   AggOnly rules in the logic attention only
enum class AblationMode : std::uint8_t { Full, TriOnly, OptOnly, AggOnly };

std::string_view mode_name(AblationMode mode);
std::optional<AblationMode> parse_mode(std::string_view name);

inline bool rules_in_loss(AblationMode m) { return m == AblationMode::Full || m == AblationMode::OptOnly; }
inline bool rules_in_attention(AblationMode m) { return m == AblationMode::Full || m == AblationMode::AggOnly; }
inline bool uses_rules(AblationMode m) { return m != AblationMode::TriOnly; }

enum class OptimizerKind : std::uint8_t { Sgd, Adam };

struct TrainConfig {
  double learning_rate = 0.003;
  std::size_t batch_size = 1024;
  double margin = 0.25;
  int dim = 100;
  int depth = 2;
  std::size_t neighbor_cap = 8;  ///< auxiliary multi-hop paths kept per target
  double dropout = 0.2;
  double rule_threshold = 0.5;   ///< minimum promotion kept by rule filtering
  double attention_base = 2.718281828459045;
  OptimizerKind optimizer = OptimizerKind::Adam;
  int max_epochs = 1000;
  int patience = 100;
  std::uint64_t seed = 1;
  AblationMode mode = AblationMode::Full;
  int negatives = 1;             ///< negatives per positive per pass
  int warmup_epochs = 0;         ///< translational pre-training with the encoder bypassed
  int eval_every = 1;            ///< epochs between validation checks
  std::size_t valid_sample = 0;  ///< validation triples used for early stopping; 0 = all
  double leaky_slope = 0.2;

  /// Throws ConfigError on the first out-of-range field.
  void validate() const;

  /// Flat `key = value` view, used for config files and artifact snapshots.
  std::map<std::string, std::string> to_map() const;
  /// Applies known keys; unknown keys throw ConfigError.
  void apply(const std::map<std::string, std::string>& values);
};

std::string_view optimizer_name(OptimizerKind kind);

}  // namespace rulegat
