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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "rulegat/rules/rule.hpp"
#include "rulegat/train/model.hpp"

namespace rulegat {

/// Everything needed to rebuild the decoder view on the original dataset.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  std::uint64_t vocab_hash = 0;
  Model model;
  RuleSet rules;                               ///< rules the encoder saw (may be empty)
  std::map<std::string, std::string> config;   ///< flat config snapshot
  int best_epoch = 0;
};

/// Little-endian binary container: magic, version, vocabulary hash, config
/// snapshot, encoder shape, matrices in row-major order, rules.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);

/// Throws DataError on bad magic, unknown version or truncation.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace rulegat
