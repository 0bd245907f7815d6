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

#include "rulegat/encoder/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rulegat {

double LogicWeightTable::factor(double promotion, double base) {
  return std::max(0.0, std::log(promotion) / std::log(base));
}

bool LogicWeightTable::all_zero() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const auto& kv) { return kv.second == 0.0; });
}

LogicWeightTable LogicWeightTable::build(const RuleSet& rules, const NeighborhoodIndex& index,
                                         double base) {
  if (!(base > 1.0)) throw ConfigError("logic attention base must be > 1");

  LogicWeightTable table;
  std::unordered_set<Triple, TripleHash> supported;
  for (const auto& rule : rules.rules) {
    const auto& sig = rule.signature;
    supported.clear();
    for (EntityId x = 0; x < index.num_entities(); ++x) {
      for (const auto& [r, y] : index.out(x)) {
        if (y == x) continue;
        switch (sig.kind) {
          case RuleKind::Inference:
            if (r == sig.body1 && index.has(x, sig.head, y)) supported.insert({x, sig.head, y});
            break;
          case RuleKind::AntiSymmetry:
            // Undirected: (x, a, y) and (y, b, x) support each other.
            if (r == sig.body1 && index.has(y, sig.head, x)) {
              supported.insert({x, sig.body1, y});
              supported.insert({y, sig.head, x});
            }
            break;
          case RuleKind::Transitivity:
            if (r != sig.body1) break;
            for (const auto& [r2, z] : index.out(y)) {
              if (r2 != sig.body2 || z == y || z == x) continue;
              if (index.has(x, sig.head, z)) supported.insert({x, sig.head, z});
            }
            break;
        }
      }
    }
    const double f = factor(rule.promotion, base);
    for (const auto& t : supported) {
      auto [it, inserted] = table.weights_.emplace(t, f);
      if (!inserted) it->second *= f;
    }
  }
  return table;
}

namespace {

struct AuxCandidate {
  EntityId source;
  std::uint8_t length;
  std::array<RelationId, 3> path;
  std::size_t score;  // frequency of the path's rarest relation

  auto key() const { return std::tie(source, length, path); }
};

std::vector<AuxCandidate> aux_paths(const NeighborhoodIndex& index, EntityId target,
                                    int max_length,
                                    const std::vector<std::size_t>& rel_freq) {
  std::vector<AuxCandidate> out;
  auto freq = [&](RelationId r) { return rel_freq[r]; };
  for (const auto& [r2, b] : index.in(target)) {
    if (b == target) continue;
    for (const auto& [r1, a] : index.in(b)) {
      if (a == b || a == target) continue;
      out.push_back({a, 2, {r1, r2, 0}, std::min(freq(r1), freq(r2))});
    }
  }
  if (max_length >= 3) {
    for (const auto& [r3, c] : index.in(target)) {
      if (c == target) continue;
      for (const auto& [r2, b] : index.in(c)) {
        if (b == c || b == target) continue;
        for (const auto& [r1, a] : index.in(b)) {
          if (a == b || a == c || a == target) continue;
          out.push_back({a, 3, {r1, r2, r3}, std::min({freq(r1), freq(r2), freq(r3)})});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AuxCandidate& x, const AuxCandidate& y) { return x.key() < y.key(); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const AuxCandidate& x, const AuxCandidate& y) { return x.key() == y.key(); }),
            out.end());
  return out;
}

}  // namespace

EdgeGraph::EdgeGraph(const NeighborhoodIndex& index, const LogicWeightTable& logic, int depth,
                     std::size_t aux_cap)
    : num_entities_(index.num_entities()) {
  if (depth < 1 || depth > 3) throw ConfigError("encoder depth must be in 1..3");

  std::vector<std::size_t> rel_freq;
  for (EntityId e = 0; e < num_entities_; ++e) {
    for (const auto& n : index.out(e)) {
      if (n.rel >= rel_freq.size()) rel_freq.resize(n.rel + 1, 0);
      ++rel_freq[n.rel];
    }
  }

  layers_.resize(static_cast<std::size_t>(depth));
  for (int l = 1; l <= depth; ++l) {
    auto& layer = layers_[static_cast<std::size_t>(l - 1)];
    layer.offsets.assign(num_entities_ + 1, 0);
    for (EntityId target = 0; target < num_entities_; ++target) {
      for (const auto& [r, src] : index.in(target)) {
        Edge e;
        e.source = src;
        e.path = {r, 0, 0};
        e.length = 1;
        e.logic = logic.weight({src, r, target});
        layer.edges.push_back(e);
      }
      if (l >= 2 && aux_cap > 0) {
        auto aux = aux_paths(index, target, l, rel_freq);
        std::sort(aux.begin(), aux.end(), [](const AuxCandidate& x, const AuxCandidate& y) {
          if (x.score != y.score) return x.score > y.score;
          return x.key() < y.key();
        });
        if (aux.size() > aux_cap) aux.resize(aux_cap);
        for (const auto& a : aux) {
          Edge e;
          e.source = a.source;
          e.path = a.path;
          e.length = a.length;
          layer.edges.push_back(e);
        }
      }
      layer.offsets[target + 1] = layer.edges.size();
    }
  }
}

}  // namespace rulegat
