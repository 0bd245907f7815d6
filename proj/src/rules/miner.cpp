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

#include "rulegat/rules/miner.hpp"

#include <algorithm>
#include <unordered_map>

#include <omp.h>
#include <spdlog/spdlog.h>

namespace rulegat {

std::string_view rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Inference: return "inference";
    case RuleKind::AntiSymmetry: return "antisymmetry";
    case RuleKind::Transitivity: return "transitivity";
  }
  return "?";
}

std::optional<RuleKind> parse_rule_kind(std::string_view name) {
  if (name == "inference") return RuleKind::Inference;
  if (name == "antisymmetry") return RuleKind::AntiSymmetry;
  if (name == "transitivity") return RuleKind::Transitivity;
  return std::nullopt;
}

namespace {

// Neighbors of `e` reached through relation `rel`; relies on (rel, entity)
// ordering of the adjacency lists.
std::span<const Neighbor> with_rel(std::span<const Neighbor> nbrs, RelationId rel) {
  auto lo = std::lower_bound(nbrs.begin(), nbrs.end(), Neighbor{rel, 0});
  auto hi = std::lower_bound(lo, nbrs.end(), Neighbor{rel + 1, 0});
  return {lo, hi};
}

void sort_candidates(std::vector<RuleCandidate>& candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const RuleCandidate& a, const RuleCandidate& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    const auto& x = a.signature;
    const auto& y = b.signature;
    return std::tie(x.body1, x.body2, x.head, x.kind) < std::tie(y.body1, y.body2, y.head, y.kind);
  });
}

// Entities with at least one non-loop edge of each relation, outgoing and
// incoming.
struct RelationCoverage {
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> in;
};

RelationCoverage relation_coverage(const NeighborhoodIndex& index, std::size_t num_relations) {
  RelationCoverage cov{std::vector<std::uint64_t>(num_relations, 0),
                       std::vector<std::uint64_t>(num_relations, 0)};
  std::vector<RelationId> seen;
  for (EntityId x = 0; x < index.num_entities(); ++x) {
    for (int dir = 0; dir < 2; ++dir) {
      seen.clear();
      for (const auto& n : dir == 0 ? index.out(x) : index.in(x)) {
        if (n.entity != x) seen.push_back(n.rel);
      }
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      auto& target = dir == 0 ? cov.out : cov.in;
      for (auto r : seen) ++target[r];
    }
  }
  return cov;
}

std::size_t max_relation_id(const NeighborhoodIndex& index) {
  std::size_t n = 0;
  for (EntityId x = 0; x < index.num_entities(); ++x) {
    for (const auto& nb : index.out(x)) n = std::max<std::size_t>(n, nb.rel + 1);
  }
  return n;
}

std::uint64_t pair_key(RelationId a, RelationId b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

RuleSamples extract_samples(const NeighborhoodIndex& index) {
  RuleSamples samples;
  std::vector<EntityId> tails;
  for (EntityId x = 0; x < index.num_entities(); ++x) {
    const auto out = index.out(x);

    tails.clear();
    for (const auto& n : out) {
      if (n.entity != x) tails.push_back(n.entity);
    }
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
    for (auto y : tails) {
      const auto rels = index.pair_rels(x, y);
      for (std::size_t i = 0; i < rels.size(); ++i) {
        for (std::size_t j = i + 1; j < rels.size(); ++j) {
          samples.inference.push_back({{x, rels[i], y}, {x, rels[j], y}});
        }
      }
    }

    for (const auto& [ra, y] : out) {
      if (y == x) continue;
      for (auto rb : index.pair_rels(y, x)) {
        if (ra < rb) samples.antisymmetry.push_back({{x, ra, y}, {y, rb, x}});
      }
    }

    for (const auto& [r1, y] : out) {
      if (y == x) continue;
      for (const auto& [r2, z] : index.out(y)) {
        if (z == y || z == x) continue;
        for (auto r3 : index.pair_rels(x, z)) {
          if (r3 == r1 || r3 == r2) continue;
          samples.transitivity.push_back({{x, r1, y}, {y, r2, z}, {x, r3, z}});
        }
      }
    }
  }
  return samples;
}

std::vector<RuleCandidate> extract_candidates(const RuleSamples& samples) {
  std::unordered_map<RuleSignature, std::uint64_t, RuleSignatureHash> freq;
  for (const auto& s : samples.inference) {
    ++freq[RuleSignature::inference(s.first.rel, s.second.rel)];
    ++freq[RuleSignature::inference(s.second.rel, s.first.rel)];
  }
  for (const auto& s : samples.antisymmetry) {
    ++freq[RuleSignature::antisymmetry(s.forward.rel, s.backward.rel)];
  }
  for (const auto& s : samples.transitivity) {
    ++freq[RuleSignature::transitivity(s.first.rel, s.second.rel, s.witness.rel)];
  }

  std::vector<RuleCandidate> out;
  out.reserve(freq.size());
  for (const auto& [sig, f] : freq) {
    RuleCandidate c;
    c.signature = sig;
    c.frequency = f;
    out.push_back(std::move(c));
  }
  sort_candidates(out);
  return out;
}

void apply_scores(RuleCandidate& c) {
  const auto& k = c.counts;
  c.scored = false;
  c.support = c.confidence = c.promotion = 0.0;
  if (k.entities == 0) {
    c.rejection = "graph has no entities";
  } else if (k.body == 0) {
    c.rejection = "body formula holds for no entity";
  } else if (k.head == 0) {
    c.rejection = "head formula holds for no entity";
  } else {
    c.rejection.clear();
    c.scored = true;
    const double n = static_cast<double>(k.entities);
    const double joint = static_cast<double>(k.joint);
    c.support = joint / n;
    c.confidence = joint / static_cast<double>(k.body);
    // joint * N / (body * head): one rounding from exact integer products.
    c.promotion = (joint * n) / (static_cast<double>(k.body) * static_cast<double>(k.head));
  }
}

RuleCandidate score_candidate(RuleCandidate candidate, const NeighborhoodIndex& index) {
  const auto& sig = candidate.signature;
  RuleCounts counts;
  counts.entities = index.num_entities();

  for (EntityId x = 0; x < index.num_entities(); ++x) {
    const auto out = index.out(x);
    bool body = false;
    bool head = false;
    bool joint = false;

    switch (sig.kind) {
      case RuleKind::Inference: {
        for (const auto& n : with_rel(out, sig.body1)) {
          if (n.entity == x) continue;
          body = true;
          if (index.has(x, sig.head, n.entity)) joint = true;
        }
        for (const auto& n : with_rel(out, sig.head)) head |= n.entity != x;
        break;
      }
      case RuleKind::AntiSymmetry: {
        for (const auto& n : with_rel(out, sig.body1)) {
          if (n.entity == x) continue;
          body = true;
          if (index.has(n.entity, sig.head, x)) joint = true;
        }
        for (const auto& n : with_rel(index.in(x), sig.head)) head |= n.entity != x;
        break;
      }
      case RuleKind::Transitivity: {
        for (const auto& n1 : with_rel(out, sig.body1)) {
          const EntityId y = n1.entity;
          if (y == x) continue;
          for (const auto& n2 : with_rel(index.out(y), sig.body2)) {
            const EntityId z = n2.entity;
            if (z == y || z == x) continue;
            body = true;
            if (index.has(x, sig.head, z)) joint = true;
          }
        }
        for (const auto& n : with_rel(out, sig.head)) head |= n.entity != x;
        break;
      }
    }
    counts.body += body;
    counts.head += head;
    counts.joint += joint;
  }

  candidate.counts = counts;
  apply_scores(candidate);
  return candidate;
}

std::vector<RuleCandidate> mine_candidates_reference(const NeighborhoodIndex& index) {
  auto candidates = extract_candidates(extract_samples(index));
  for (auto& c : candidates) c = score_candidate(std::move(c), index);
  return candidates;
}

namespace {

struct MinerPartial {
  std::unordered_map<RuleSignature, std::uint64_t, RuleSignatureHash> frequency;
  std::unordered_map<RuleSignature, std::uint64_t, RuleSignatureHash> joint;
  std::unordered_map<std::uint64_t, std::uint64_t> chain_body;  // (s1, s2) -> entities

  void merge(const MinerPartial& other) {
    for (const auto& [k, v] : other.frequency) frequency[k] += v;
    for (const auto& [k, v] : other.joint) joint[k] += v;
    for (const auto& [k, v] : other.chain_body) chain_body[k] += v;
  }
};

// All rule statistics anchored at entity x.
void mine_entity(const NeighborhoodIndex& index, EntityId x, MinerPartial& acc,
                 std::vector<EntityId>& tails, std::vector<RuleSignature>& anchored,
                 std::vector<std::uint64_t>& chains) {
  const auto out = index.out(x);
  anchored.clear();
  chains.clear();

  tails.clear();
  for (const auto& n : out) {
    if (n.entity != x) tails.push_back(n.entity);
  }
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  for (auto y : tails) {
    const auto rels = index.pair_rels(x, y);
    for (std::size_t i = 0; i < rels.size(); ++i) {
      for (std::size_t j = i + 1; j < rels.size(); ++j) {
        const auto fwd = RuleSignature::inference(rels[i], rels[j]);
        const auto bwd = RuleSignature::inference(rels[j], rels[i]);
        ++acc.frequency[fwd];
        ++acc.frequency[bwd];
        anchored.push_back(fwd);
        anchored.push_back(bwd);
      }
    }
  }

  for (const auto& [ra, y] : out) {
    if (y == x) continue;
    for (auto rb : index.pair_rels(y, x)) {
      if (ra >= rb) continue;
      const auto sig = RuleSignature::antisymmetry(ra, rb);
      ++acc.frequency[sig];
      anchored.push_back(sig);
    }
  }

  for (const auto& [r1, y] : out) {
    if (y == x) continue;
    for (const auto& [r2, z] : index.out(y)) {
      if (z == y || z == x) continue;
      chains.push_back(pair_key(r1, r2));
      for (auto r3 : index.pair_rels(x, z)) {
        if (r3 == r1 || r3 == r2) continue;
        const auto sig = RuleSignature::transitivity(r1, r2, r3);
        ++acc.frequency[sig];
        anchored.push_back(sig);
      }
    }
  }

  std::sort(anchored.begin(), anchored.end());
  anchored.erase(std::unique(anchored.begin(), anchored.end()), anchored.end());
  for (const auto& sig : anchored) ++acc.joint[sig];

  std::sort(chains.begin(), chains.end());
  chains.erase(std::unique(chains.begin(), chains.end()), chains.end());
  for (auto k : chains) ++acc.chain_body[k];
}

}  // namespace

std::vector<RuleCandidate> mine_candidates(const NeighborhoodIndex& index) {
  const std::size_t n = index.num_entities();
  const auto coverage = relation_coverage(index, max_relation_id(index));

  std::vector<MinerPartial> partials(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& acc = partials[static_cast<std::size_t>(omp_get_thread_num())];
    std::vector<EntityId> tails;
    std::vector<RuleSignature> anchored;
    std::vector<std::uint64_t> chains;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x) {
      mine_entity(index, static_cast<EntityId>(x), acc, tails, anchored, chains);
    }
  }

  MinerPartial total;
  for (const auto& p : partials) total.merge(p);

  std::vector<RuleCandidate> out;
  out.reserve(total.frequency.size());
  for (const auto& [sig, f] : total.frequency) {
    RuleCandidate c;
    c.signature = sig;
    c.frequency = f;
    c.counts.entities = n;
    c.counts.joint = total.joint[sig];
    switch (sig.kind) {
      case RuleKind::Inference:
        c.counts.body = coverage.out[sig.body1];
        c.counts.head = coverage.out[sig.head];
        break;
      case RuleKind::AntiSymmetry:
        c.counts.body = coverage.out[sig.body1];
        c.counts.head = coverage.in[sig.head];
        break;
      case RuleKind::Transitivity:
        c.counts.body = total.chain_body[pair_key(sig.body1, sig.body2)];
        c.counts.head = coverage.out[sig.head];
        break;
    }
    apply_scores(c);
    out.push_back(std::move(c));
  }
  sort_candidates(out);
  return out;
}

RuleSet filter_rules(const std::vector<RuleCandidate>& candidates, double threshold) {
  if (!(threshold > 0.0)) {
    throw ConfigError("rule threshold must be > 0, got " + std::to_string(threshold));
  }
  if (threshold < 1.0) {
    spdlog::info("rule threshold {} < 1 admits negatively correlated rules", threshold);
  }
  RuleSet set;
  set.threshold = threshold;
  std::size_t rejected = 0;
  for (const auto& c : candidates) {
    if (!c.scored) {
      ++rejected;
      continue;
    }
    if (c.promotion >= threshold) set.rules.push_back(c);
  }
  if (rejected > 0) spdlog::info("{} candidates had undefined scores and were skipped", rejected);
  return set;
}

GroundRules ground_rules(const RuleSet& rules, const NeighborhoodIndex& index) {
  // Triples of each relation, loops excluded.
  std::unordered_map<RelationId, std::vector<Triple>> by_rel;
  for (EntityId x = 0; x < index.num_entities(); ++x) {
    for (const auto& n : index.out(x)) {
      if (n.entity != x) by_rel[n.rel].push_back({x, n.rel, n.entity});
    }
  }
  static const std::vector<Triple> kEmpty;
  auto triples_of = [&](RelationId r) -> const std::vector<Triple>& {
    auto it = by_rel.find(r);
    return it == by_rel.end() ? kEmpty : it->second;
  };

  GroundRules out;
  for (const auto& rule : rules.rules) {
    const auto& sig = rule.signature;
    switch (sig.kind) {
      case RuleKind::Inference:
        for (const auto& b : triples_of(sig.body1)) {
          out.push_back({RuleKind::Inference, {b, Triple{b.head, sig.head, b.tail}, Triple{}}});
        }
        break;
      case RuleKind::AntiSymmetry:
        for (const auto& b : triples_of(sig.body1)) {
          out.push_back({RuleKind::AntiSymmetry, {b, Triple{b.tail, sig.head, b.head}, Triple{}}});
        }
        for (const auto& b : triples_of(sig.head)) {
          out.push_back({RuleKind::AntiSymmetry, {b, Triple{b.tail, sig.body1, b.head}, Triple{}}});
        }
        break;
      case RuleKind::Transitivity:
        for (const auto& b1 : triples_of(sig.body1)) {
          for (const auto& n : with_rel(index.out(b1.tail), sig.body2)) {
            const EntityId z = n.entity;
            if (z == b1.tail || z == b1.head) continue;
            out.push_back({RuleKind::Transitivity,
                           {b1, Triple{b1.tail, sig.body2, z}, Triple{b1.head, sig.head, z}}});
          }
        }
        break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RuleKindCounts count_by_kind(const RuleSet& rules) {
  RuleKindCounts c;
  for (const auto& r : rules.rules) ++c.by_kind[static_cast<std::size_t>(r.signature.kind)];
  return c;
}

RuleKindCounts count_by_kind(const GroundRules& rules) {
  RuleKindCounts c;
  for (const auto& r : rules) ++c.by_kind[static_cast<std::size_t>(r.kind)];
  return c;
}

}  // namespace rulegat
