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

#include <optional>
#include <string>

#include "rulegat/eval/classification.hpp"
#include "rulegat/eval/ranking.hpp"

namespace rulegat {

struct EvalReport {
  std::string split = "test";
  std::optional<LinkMetrics> link;
  std::optional<ClassificationReport> classification;
};

/// Aligned table for people.
std::string format_table(const EvalReport& report, const Vocabulary& relations);

/// One `metric<TAB>split<TAB>value` line per figure. Per-relation rows use
/// `metric@relation_name`.
std::string format_machine(const EvalReport& report, const Vocabulary& relations);

}  // namespace rulegat
