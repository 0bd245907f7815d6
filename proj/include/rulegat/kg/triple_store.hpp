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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rulegat/common.hpp"

namespace rulegat {

struct Triple {
  EntityId head = 0;
  RelationId rel = 0;
  EntityId tail = 0;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    std::uint64_t h = (std::uint64_t{t.head} << 32) ^ t.tail;
    h ^= std::uint64_t{t.rel} * 0x9E3779B97F4A7C15ULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

/// Bidirectional string <-> dense id map. Ids are assigned in order of first
/// occurrence.
class Vocabulary {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

enum class Split : std::uint8_t { Train = 0, Valid = 1, Test = 2 };

std::string_view split_name(Split split);

/// Interned triples for the three dataset splits.
///
/// Splits are kept pairwise disjoint: adding a triple that is already known in
/// any split is refused. Membership in the union of all splits (the filtered
/// evaluation set) is an O(1) expected lookup.
class TripleStore {
 public:
  EntityId intern_entity(std::string_view name) { return entities_.intern(name); }
  RelationId intern_relation(std::string_view name) { return relations_.intern(name); }

  /// Adds a triple to a split. Returns false (and stores nothing) when the
  /// triple is already present in any split.
  bool add(Split split, const Triple& triple);

  /// Convenience for tests and synthetic data: interns names then adds.
  bool add(Split split, std::string_view head, std::string_view rel, std::string_view tail);

  const std::vector<Triple>& triples(Split split) const {
    return splits_[static_cast<std::size_t>(split)];
  }
  const std::vector<Triple>& train() const { return triples(Split::Train); }
  const std::vector<Triple>& valid() const { return triples(Split::Valid); }
  const std::vector<Triple>& test() const { return triples(Split::Test); }

  /// True iff the triple is in any split.
  bool contains(const Triple& triple) const { return membership_.contains(triple); }
  bool contains(Split split, const Triple& triple) const;
  bool in_train(const Triple& triple) const { return contains(Split::Train, triple); }

  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }
  const Vocabulary& entities() const { return entities_; }
  const Vocabulary& relations() const { return relations_; }

  /// FNV-1a digest of both vocabularies in id order; identifies the id layout
  /// a checkpoint was trained against.
  std::uint64_t vocab_hash() const;

  bool valid_ids(const Triple& triple) const {
    return triple.head < num_entities() && triple.tail < num_entities() &&
           triple.rel < num_relations();
  }

 private:
  Vocabulary entities_;
  Vocabulary relations_;
  std::vector<Triple> splits_[3];
  std::unordered_map<Triple, std::uint8_t, TripleHash> membership_;  // split index
};

struct LoadStats {
  std::size_t duplicates[3] = {0, 0, 0};
  std::size_t cross_split_overlaps = 0;
};

/// Loads tab-separated `head<TAB>relation<TAB>tail` files. Vocabularies span
/// all three splits; duplicates are dropped with a warning.
TripleStore load_dataset(const std::filesystem::path& train_path,
                         const std::filesystem::path& valid_path,
                         const std::filesystem::path& test_path,
                         LoadStats* stats = nullptr);

/// Loads `train.txt`, `valid.txt` and `test.txt` from a directory.
TripleStore load_dataset_dir(const std::filesystem::path& dir, LoadStats* stats = nullptr);

}  // namespace rulegat
