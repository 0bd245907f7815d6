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

#include <span>
#include <unordered_map>
#include <vector>

#include "rulegat/kg/triple_store.hpp"

namespace rulegat {

/// One adjacency entry: the relation and the entity at the other end.
struct Neighbor {
  RelationId rel = 0;
  EntityId entity = 0;

  friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
};

/// Compressed adjacency over one split. Immutable after construction.
///
/// out(e) lists (r, e') for every (e, r, e'); in(e) lists (r, e') for every
/// (e', r, e). Both are sorted by (rel, entity).
class NeighborhoodIndex {
 public:
  NeighborhoodIndex() = default;
  NeighborhoodIndex(std::size_t num_entities, std::span<const Triple> triples);

  std::span<const Neighbor> out(EntityId e) const {
    return {out_.data() + out_offsets_[e], out_offsets_[e + 1] - out_offsets_[e]};
  }
  std::span<const Neighbor> in(EntityId e) const {
    return {in_.data() + in_offsets_[e], in_offsets_[e + 1] - in_offsets_[e]};
  }

  /// Relations linking head -> tail, sorted. Empty when the pair is unlinked.
  std::span<const RelationId> pair_rels(EntityId head, EntityId tail) const;

  bool has(EntityId head, RelationId rel, EntityId tail) const;

  std::size_t num_entities() const { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t num_triples() const { return out_.size(); }

 private:
  static std::uint64_t key(EntityId h, EntityId t) { return (std::uint64_t{h} << 32) | t; }

  std::vector<std::size_t> out_offsets_;
  std::vector<Neighbor> out_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Neighbor> in_;
  std::unordered_map<std::uint64_t, std::vector<RelationId>> pair_rels_;
};

NeighborhoodIndex build_index(const TripleStore& store, Split split = Split::Train);

}  // namespace rulegat
