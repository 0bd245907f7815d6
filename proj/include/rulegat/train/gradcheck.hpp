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

#include <map>
#include <span>
#include <string>

#include "rulegat/train/model.hpp"

namespace rulegat {

struct GradCheckOptions {
  double step = 1e-5;           ///< central difference step
  double kink_threshold = 1e-3; ///< samples closer than this to a kink are excluded
  double floor = 1e-6;          ///< denominator floor of the relative error
};

struct GradCheckResult {
  bool excluded = false;       ///< sample sits within kink_threshold of a kink
  double kink_distance = 0.0;
  double max_relative_error = 0.0;
  std::map<std::string, double> group_error;  ///< entity, relation, w1, w2, we, wr
  std::size_t entries = 0;
};

/// Distance of the mean hinge loss of `samples` from its nearest
/// non-differentiable point: L1 residual components, hinge arguments,
/// LeakyReLU inputs and projected norms.
double loss_kink_distance(const Model& model, const Encoder& encoder, std::span<const TrainingSample> samples,
                          double margin);

/// Compares the analytic gradient of the mean hinge loss against central
/// finite differences on every parameter entry. The relative error of an
/// entry is |a - n| / max(|a|, |n|, floor).
GradCheckResult gradient_check(const Model& model, const Encoder& encoder, std::span<const TrainingSample> samples,
                               double margin, const GradCheckOptions& options = {});

}  // namespace rulegat
