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

#include "rulegat/train/config.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "rulegat/common.hpp"

namespace rulegat {

std::string_view mode_name(AblationMode mode) {
  switch (mode) {
    case AblationMode::Full: return "full";
    case AblationMode::TriOnly: return "trionly";
    case AblationMode::OptOnly: return "optonly";
    case AblationMode::AggOnly: return "aggonly";
  }
  return "?";
}

std::optional<AblationMode> parse_mode(std::string_view name) {
  for (auto m : {AblationMode::Full, AblationMode::TriOnly, AblationMode::OptOnly, AblationMode::AggOnly}) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view optimizer_name(OptimizerKind kind) { return kind == OptimizerKind::Adam ? "adam" : "sgd"; }

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(fmt::format("{}: cannot parse '{}'", key, text));
  return value;
}

void check(bool ok, std::string_view what) {
  if (!ok) throw ConfigError(std::string(what));
}

}  // namespace

void TrainConfig::validate() const {
  check(std::isfinite(learning_rate) && learning_rate > 0, "train.learning_rate must be > 0");
  check(batch_size > 0, "train.batch_size must be > 0");
  check(std::isfinite(margin) && margin > 0, "train.margin must be > 0");
  check(dim > 0, "model.dim must be > 0");
  check(depth >= 1 && depth <= 3, "model.depth must be in 1..3");
  check(dropout >= 0.0 && dropout < 1.0, "model.dropout must be in [0, 1)");
  check(std::isfinite(rule_threshold) && rule_threshold > 0, "rules.threshold must be > 0");
  check(attention_base > 1.0, "model.attention_base must be > 1");
  check(max_epochs >= 0, "train.max_epochs must be >= 0");
  check(patience > 0, "train.patience must be > 0");
  check(negatives > 0, "train.negatives must be > 0");
  check(warmup_epochs >= 0, "train.warmup_epochs must be >= 0");
  check(eval_every > 0, "train.eval_every must be > 0");
  check(leaky_slope >= 0.0 && leaky_slope <= 1.0, "model.leaky_slope must be in [0, 1]");
}

std::map<std::string, std::string> TrainConfig::to_map() const {
  return {
      {"train.learning_rate", fmt::format("{}", learning_rate)},
      {"train.batch_size", fmt::format("{}", batch_size)},
      {"train.margin", fmt::format("{}", margin)},
      {"model.dim", fmt::format("{}", dim)},
      {"model.depth", fmt::format("{}", depth)},
      {"model.neighbor_cap", fmt::format("{}", neighbor_cap)},
      {"model.dropout", fmt::format("{}", dropout)},
      {"rules.threshold", fmt::format("{}", rule_threshold)},
      {"model.attention_base", fmt::format("{}", attention_base)},
      {"train.optimizer", std::string(optimizer_name(optimizer))},
      {"train.max_epochs", fmt::format("{}", max_epochs)},
      {"train.patience", fmt::format("{}", patience)},
      {"train.seed", fmt::format("{}", seed)},
      {"train.mode", std::string(mode_name(mode))},
      {"train.negatives", fmt::format("{}", negatives)},
      {"train.warmup_epochs", fmt::format("{}", warmup_epochs)},
      {"train.eval_every", fmt::format("{}", eval_every)},
      {"train.valid_sample", fmt::format("{}", valid_sample)},
      {"model.leaky_slope", fmt::format("{}", leaky_slope)},
  };
}

void TrainConfig::apply(const std::map<std::string, std::string>& values) {
  for (const auto& [k, v] : values) {
    if (k == "train.learning_rate") learning_rate = parse_number<double>(k, v);
    else if (k == "train.batch_size") batch_size = parse_number<std::size_t>(k, v);
    else if (k == "train.margin") margin = parse_number<double>(k, v);
    else if (k == "model.dim") dim = parse_number<int>(k, v);
    else if (k == "model.depth") depth = parse_number<int>(k, v);
    else if (k == "model.neighbor_cap") neighbor_cap = parse_number<std::size_t>(k, v);
    else if (k == "model.dropout") dropout = parse_number<double>(k, v);
    else if (k == "rules.threshold") rule_threshold = parse_number<double>(k, v);
    else if (k == "model.attention_base") attention_base = parse_number<double>(k, v);
    else if (k == "train.optimizer") {
      if (v == "adam") optimizer = OptimizerKind::Adam;
      else if (v == "sgd") optimizer = OptimizerKind::Sgd;
      else throw ConfigError(fmt::format("{}: expected adam or sgd, got '{}'", k, v));
    } else if (k == "train.max_epochs") max_epochs = parse_number<int>(k, v);
    else if (k == "train.patience") patience = parse_number<int>(k, v);
    else if (k == "train.seed") seed = parse_number<std::uint64_t>(k, v);
    else if (k == "train.mode") {
      auto m = parse_mode(v);
      if (!m) throw ConfigError(fmt::format("{}: unknown mode '{}'", k, v));
      mode = *m;
    } else if (k == "train.negatives") negatives = parse_number<int>(k, v);
    else if (k == "train.warmup_epochs") warmup_epochs = parse_number<int>(k, v);
    else if (k == "train.eval_every") eval_every = parse_number<int>(k, v);
    else if (k == "train.valid_sample") valid_sample = parse_number<std::size_t>(k, v);
    else if (k == "model.leaky_slope") leaky_slope = parse_number<double>(k, v);
    else throw ConfigError(fmt::format("unknown configuration key '{}'", k));
  }
}

}  // namespace rulegat
