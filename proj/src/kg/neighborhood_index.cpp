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

#include "rulegat/kg/neighborhood_index.hpp"

#include <algorithm>

namespace rulegat {

namespace {

void build_csr(std::size_t n, std::span<const Triple> triples, bool outgoing,
               std::vector<std::size_t>& offsets, std::vector<Neighbor>& entries) {
  offsets.assign(n + 1, 0);
  for (const auto& t : triples) ++offsets[(outgoing ? t.head : t.tail) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];

  entries.resize(triples.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& t : triples) {
    const EntityId anchor = outgoing ? t.head : t.tail;
    const EntityId other = outgoing ? t.tail : t.head;
    entries[cursor[anchor]++] = Neighbor{t.rel, other};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              entries.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

}  // namespace

NeighborhoodIndex::NeighborhoodIndex(std::size_t num_entities, std::span<const Triple> triples) {
  build_csr(num_entities, triples, true, out_offsets_, out_);
  build_csr(num_entities, triples, false, in_offsets_, in_);

  pair_rels_.reserve(triples.size());
  for (const auto& t : triples) pair_rels_[key(t.head, t.tail)].push_back(t.rel);
  for (auto& [k, rels] : pair_rels_) {
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  }
}

std::span<const RelationId> NeighborhoodIndex::pair_rels(EntityId head, EntityId tail) const {
  auto it = pair_rels_.find(key(head, tail));
  if (it == pair_rels_.end()) return {};
  return it->second;
}

bool NeighborhoodIndex::has(EntityId head, RelationId rel, EntityId tail) const {
  auto rels = pair_rels(head, tail);
  return std::binary_search(rels.begin(), rels.end(), rel);
}

NeighborhoodIndex build_index(const TripleStore& store, Split split) {
  return NeighborhoodIndex(store.num_entities(), store.triples(split));
}

}  // namespace rulegat
