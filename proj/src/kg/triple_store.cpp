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

#include "rulegat/kg/triple_store.hpp"

#include <fstream>

#include <spdlog/spdlog.h>

namespace rulegat {

std::uint32_t Vocabulary::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Valid: return "valid";
    case Split::Test: return "test";
  }
  return "?";
}

bool TripleStore::add(Split split, const Triple& triple) {
  require(valid_ids(triple), "TripleStore::add: triple references unknown ids");
  auto [it, inserted] = membership_.emplace(triple, static_cast<std::uint8_t>(split));
  if (!inserted) return false;
  splits_[static_cast<std::size_t>(split)].push_back(triple);
  return true;
}

bool TripleStore::add(Split split, std::string_view head, std::string_view rel,
                      std::string_view tail) {
  Triple t;
  t.head = intern_entity(head);
  t.rel = intern_relation(rel);
  t.tail = intern_entity(tail);
  return add(split, t);
}

bool TripleStore::contains(Split split, const Triple& triple) const {
  auto it = membership_.find(triple);
  return it != membership_.end() && it->second == static_cast<std::uint8_t>(split);
}

std::uint64_t TripleStore::vocab_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // separator outside the byte range of names
    h *= 0x100000001b3ULL;
  };
  for (const auto& n : entities_.names()) mix(n);
  mix("\x01relations");
  for (const auto& n : relations_.names()) mix(n);
  return h;
}

namespace {

void load_split(TripleStore& store, Split split, const std::filesystem::path& path,
                LoadStats& stats) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      const auto end = tab == std::string::npos ? line.size() : tab;
      if (count < 3) fields[count] = std::string_view(line).substr(start, end - start);
      ++count;
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (count != 3) {
      throw ParseError(path.string(), line_no,
                       "expected 3 tab-separated fields, found " + std::to_string(count));
    }
    for (const auto& f : fields) {
      if (f.empty()) throw ParseError(path.string(), line_no, "empty field");
    }

    Triple t;
    t.head = store.intern_entity(fields[0]);
    t.rel = store.intern_relation(fields[1]);
    t.tail = store.intern_entity(fields[2]);
    if (!store.add(split, t)) {
      if (store.contains(split, t)) {
        ++stats.duplicates[static_cast<std::size_t>(split)];
      } else {
        ++stats.cross_split_overlaps;
      }
    }
  }
}

}  // namespace

TripleStore load_dataset(const std::filesystem::path& train_path,
                         const std::filesystem::path& valid_path,
                         const std::filesystem::path& test_path, LoadStats* stats) {
  TripleStore store;
  LoadStats local;
  load_split(store, Split::Train, train_path, local);
  load_split(store, Split::Valid, valid_path, local);
  load_split(store, Split::Test, test_path, local);

  for (Split s : {Split::Train, Split::Valid, Split::Test}) {
    const auto dup = local.duplicates[static_cast<std::size_t>(s)];
    if (dup > 0) spdlog::warn("{}: dropped {} duplicate triples", split_name(s), dup);
  }
  if (local.cross_split_overlaps > 0) {
    spdlog::warn("dropped {} triples already present in an earlier split",
                 local.cross_split_overlaps);
  }
  spdlog::info("loaded {} entities, {} relations, {}/{}/{} train/valid/test triples",
               store.num_entities(), store.num_relations(), store.train().size(),
               store.valid().size(), store.test().size());
  if (stats) *stats = local;
  return store;
}

TripleStore load_dataset_dir(const std::filesystem::path& dir, LoadStats* stats) {
  return load_dataset(dir / "train.txt", dir / "valid.txt", dir / "test.txt", stats);
}

}  // namespace rulegat
