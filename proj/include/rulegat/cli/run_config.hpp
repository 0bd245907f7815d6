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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "rulegat/train/config.hpp"

namespace rulegat {

using ConfigValues = std::map<std::string, std::string>;

/// Parses flat `key = value` lines. Blank lines and `#` comments are ignored;
/// a repeated key keeps the last value. Malformed lines throw ConfigError.
ConfigValues parse_config_text(std::string_view text, std::string_view origin);
ConfigValues read_config_file(const std::filesystem::path& path);

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path out_dir = "out";
  int threads = 0;                  ///< 0 keeps the OpenMP default
  std::uint64_t eval_seed = 20240607;  ///< classification negatives
  std::size_t gradcheck_samples = 4;
  TrainConfig train;

  /// Overlays `values` (known keys only).
  void apply(const ConfigValues& values);
  void validate() const;
  ConfigValues snapshot() const;
};

/// defaults <- file <- flags, last writer wins.
RunConfig resolve_config(const ConfigValues& file_values, const ConfigValues& flag_values);

}  // namespace rulegat
