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
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulegat/kg/triple_store.hpp"

namespace rulegat {

/// The three rule shapes mined from a graph:
///   Inference     (x, s, y) => (x, t, y)
///   AntiSymmetry  (x, a, y) <=> (y, b, x)      undirected, stored with a < b
///   Transitivity  (x, s1, y) ^ (y, s2, z) => (x, t, z)
enum class RuleKind : std::uint8_t { Inference = 0, AntiSymmetry = 1, Transitivity = 2 };

inline constexpr RelationId kNoRelation = std::numeric_limits<RelationId>::max();

std::string_view rule_kind_name(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view name);

/// Relation-level identity of a rule. `body2` is kNoRelation for one-to-one
/// kinds. For AntiSymmetry `body1 < head`.
struct RuleSignature {
  RuleKind kind = RuleKind::Inference;
  RelationId body1 = 0;
  RelationId body2 = kNoRelation;
  RelationId head = 0;

  friend auto operator<=>(const RuleSignature&, const RuleSignature&) = default;

  std::size_t body_size() const { return body2 == kNoRelation ? 1 : 2; }

  static RuleSignature inference(RelationId body, RelationId head) {
    return {RuleKind::Inference, body, kNoRelation, head};
  }
  /// Canonicalizes the undirected pair.
  static RuleSignature antisymmetry(RelationId a, RelationId b) {
    return {RuleKind::AntiSymmetry, std::min(a, b), kNoRelation, std::max(a, b)};
  }
  static RuleSignature transitivity(RelationId s1, RelationId s2, RelationId head) {
    return {RuleKind::Transitivity, s1, s2, head};
  }
};

struct RuleSignatureHash {
  std::size_t operator()(const RuleSignature& s) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(s.kind);
    for (std::uint64_t v : {std::uint64_t{s.body1}, std::uint64_t{s.body2}, std::uint64_t{s.head}}) {
      h = (h ^ v) * 0x100000001b3ULL;
      h ^= h >> 31;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Entity-level counts behind the rule scores. All counts bind the counted
/// entity to the rule's first variable x.
struct RuleCounts {
  std::uint64_t body = 0;      ///< entities satisfying the body formula
  std::uint64_t head = 0;      ///< entities satisfying the head formula
  std::uint64_t joint = 0;     ///< entities satisfying the instantiated rule
  std::uint64_t entities = 0;  ///< N
};

struct RuleCandidate {
  RuleSignature signature;
  std::uint64_t frequency = 0;  ///< number of supporting samples
  RuleCounts counts;
  double support = 0.0;
  double confidence = 0.0;
  double promotion = 0.0;
  bool scored = false;
  std::string rejection;  ///< set when the score is undefined
};

struct RuleSet {
  std::vector<RuleCandidate> rules;
  double threshold = 0.5;
};

/// A rule instantiated with concrete entities. Body triples come first, the
/// head triple last: Inference/AntiSymmetry use triples[0..1], Transitivity
/// triples[0..2].
struct GroundRule {
  RuleKind kind = RuleKind::Inference;
  std::array<Triple, 3> triples{};

  std::size_t size() const { return kind == RuleKind::Transitivity ? 3 : 2; }
  const Triple& head() const { return triples[size() - 1]; }

  friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
};

struct GroundRuleHash {
  std::size_t operator()(const GroundRule& g) const noexcept {
    std::size_t h = static_cast<std::size_t>(g.kind);
    TripleHash th;
    for (std::size_t i = 0; i < g.size(); ++i) h = h * 0x9E3779B1u ^ th(g.triples[i]);
    return h;
  }
};

using GroundRules = std::vector<GroundRule>;

}  // namespace rulegat
