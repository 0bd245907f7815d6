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

#include "rulegat/train/sampling.hpp"

namespace rulegat {

std::optional<Triple> corrupt_triple(std::mt19937_64& rng, std::size_t num_entities, const Triple& triple,
                                     const KnownTriple& known, CorruptionStats* stats) {
  require(num_entities > 0, "corrupt_triple: empty entity set");
  std::uniform_int_distribution<EntityId> pick(0, static_cast<EntityId>(num_entities - 1));
  std::bernoulli_distribution coin(0.5);
  const bool head = coin(rng);
  if (stats) ++(head ? stats->head_replaced : stats->tail_replaced);
  for (int attempt = 0; attempt < kMaxCorruptionTries; ++attempt) {
    Triple c = triple;
    (head ? c.head : c.tail) = pick(rng);
    if (!known(c)) return c;
  }
  if (stats) ++stats->skipped;
  return std::nullopt;
}

std::optional<GroundRule> corrupt_rule(std::mt19937_64& rng, std::size_t num_entities, const GroundRule& rule,
                                       const GroundRuleSet& grounded, CorruptionStats* stats) {
  require(num_entities > 0, "corrupt_rule: empty entity set");
  std::uniform_int_distribution<EntityId> pick(0, static_cast<EntityId>(num_entities - 1));
  std::bernoulli_distribution coin(0.5);

  // Ends of the chain: for transitivity the first body head and the rule head
  // tail; otherwise the two entities of the first body triple.
  const EntityId first = rule.triples[0].head;
  const EntityId last = rule.kind == RuleKind::Transitivity ? rule.triples[2].tail : rule.triples[0].tail;
  const bool replace_first = coin(rng);
  if (stats) ++(replace_first ? stats->head_replaced : stats->tail_replaced);
  const EntityId old = replace_first ? first : last;

  for (int attempt = 0; attempt < kMaxCorruptionTries; ++attempt) {
    const EntityId fresh = pick(rng);
    GroundRule c = rule;
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto& t = c.triples[i];
      if (t.head == old) t.head = fresh;
      if (t.tail == old) t.tail = fresh;
    }
    if (!grounded.contains(c)) return c;
  }
  if (stats) ++stats->skipped;
  return std::nullopt;
}

}  // namespace rulegat
