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
#include <span>
#include <unordered_map>
#include <vector>

#include "rulegat/kg/neighborhood_index.hpp"
#include "rulegat/rules/rule.hpp"

namespace rulegat {

/// Rule-derived attention weight of each training triple.
///
/// A rule supports triple (i, k, j) when its head relation is k and its body,
/// instantiated with i and j, is present in the graph. The weight is the
/// product over supporting rules of max(0, ln(promotion) / ln(base)); a triple
/// with no supporting rule weighs 0.
class LogicWeightTable {
 public:
  LogicWeightTable() = default;

  /// `base` must exceed 1; larger promotion then always means larger weight.
  static LogicWeightTable build(const RuleSet& rules, const NeighborhoodIndex& index, double base);

  double weight(const Triple& t) const {
    auto it = weights_.find(t);
    return it == weights_.end() ? 0.0 : it->second;
  }
  std::size_t supported_triples() const { return weights_.size(); }
  bool all_zero() const;

  /// One rule's factor for a given promotion degree.
  static double factor(double promotion, double base);

 private:
  std::unordered_map<Triple, double, TripleHash> weights_;
};

/// An in-edge of the aggregation graph: a one-hop triple, or an auxiliary
/// multi-hop path whose relation vector is the sum of its relations.
struct Edge {
  EntityId source = 0;
  std::array<RelationId, 3> path{};
  std::uint8_t length = 1;
  double logic = 0.0;  ///< rule weight; always 0 on auxiliary edges

  std::span<const RelationId> relations() const { return {path.data(), length}; }
};

/// CSR of in-edges per target entity for one layer.
struct LayerEdges {
  std::vector<std::size_t> offsets;
  std::vector<Edge> edges;

  std::span<const Edge> into(EntityId e) const {
    return {edges.data() + offsets[e], offsets[e + 1] - offsets[e]};
  }
  std::size_t begin(EntityId e) const { return offsets[e]; }
};

/// Per-layer aggregation neighborhoods. Layer l (1-based) holds every one-hop
/// in-edge plus up to `aux_cap` auxiliary paths of length 2..l per target.
/// Auxiliary overflow keeps the paths whose rarest relation is most frequent,
/// then the lowest source id, then the lowest relation sequence.
class EdgeGraph {
 public:
  EdgeGraph() = default;
  EdgeGraph(const NeighborhoodIndex& index, const LogicWeightTable& logic, int depth,
            std::size_t aux_cap);

  const LayerEdges& layer(int l) const { return layers_.at(static_cast<std::size_t>(l - 1)); }
  int depth() const { return static_cast<int>(layers_.size()); }
  std::size_t num_entities() const { return num_entities_; }

 private:
  std::size_t num_entities_ = 0;
  std::vector<LayerEdges> layers_;
};

}  // namespace rulegat
