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
#include <optional>
#include <random>
#include <unordered_set>

#include "rulegat/logic/truth.hpp"
#include "rulegat/rules/rule.hpp"

namespace rulegat {

inline constexpr int kMaxCorruptionTries = 100;

/// Counts samples dropped because no valid corruption was found.
struct CorruptionStats {
  std::size_t skipped = 0;
  std::size_t head_replaced = 0;
  std::size_t tail_replaced = 0;
};

/// Predicate telling whether a triple is a known positive.
using KnownTriple = std::function<bool(const Triple&)>;

/// Replaces the head or the tail (fair coin) by a uniform entity and
/// resamples while the result is known. After kMaxCorruptionTries failures the
/// sample is skipped and counted.
std::optional<Triple> corrupt_triple(std::mt19937_64& rng, std::size_t num_entities, const Triple& triple,
                                     const KnownTriple& known, CorruptionStats* stats = nullptr);

/// Ground rules keyed for membership tests during rule corruption.
using GroundRuleSet = std::unordered_set<GroundRule, GroundRuleHash>;

/// Replaces one end entity of a ground rule consistently in every triple
/// where it appears. Inference and anti-symmetry pick one of their two
/// entities; transitivity picks the first or last and never the middle one.
/// The result must differ from every ground rule in `grounded`.
std::optional<GroundRule> corrupt_rule(std::mt19937_64& rng, std::size_t num_entities, const GroundRule& rule,
                                       const GroundRuleSet& grounded, CorruptionStats* stats = nullptr);

/// max(0, margin - positive + negative).
inline double hinge_term(double margin, double positive, double negative) {
  return std::max(0.0, margin - positive + negative);
}

}  // namespace rulegat
