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

#include <random>

#include "rulegat/common.hpp"

namespace rulegat {

/// Entity and relation embeddings, one row per id. Both share dimension d.
struct EmbeddingState {
  Matrix entity;
  Matrix relation;

  Eigen::Index dim() const { return entity.cols(); }
};

/// Weights of the rule-enhanced attention encoder.
struct EncoderParams {
  Matrix w1;  ///< d x 3d, applied to [h_target; h_source; g_path]
  Vector w2;  ///< attention scorer, d
  Matrix we;  ///< d x d residual transform of the input embeddings
  Matrix wr;  ///< d x d relation update shared by every layer
  double slope = 0.2;  ///< LeakyReLU negative slope
  int depth = 2;       ///< number of propagation layers, 1..3

  Eigen::Index dim() const { return we.rows(); }

  static EncoderParams zeros(Eigen::Index d, int depth);
  static EncoderParams identity_like(Eigen::Index d, int depth);  ///< w1 = 0, we = wr = I

  /// Column blocks of w1 acting on the target, source and relation parts.
  auto target_block() const { return w1.leftCols(dim()); }
  auto source_block() const { return w1.middleCols(dim(), dim()); }
  auto relation_block() const { return w1.rightCols(dim()); }
};

/// Same-shaped container for gradients (or optimizer moments) of every
/// trainable block.
struct Gradients {
  Matrix entity;
  Matrix relation;
  Matrix w1;
  Vector w2;
  Matrix we;
  Matrix wr;

  static Gradients zeros_like(const EmbeddingState& emb, const EncoderParams& params);
  void set_zero();
};

/// Uniform(-b, b) with b = sqrt(6 / (fan_in + fan_out)).
double xavier_bound(Eigen::Index fan_in, Eigen::Index fan_out);
void xavier_fill(Matrix& m, Eigen::Index fan_in, Eigen::Index fan_out, std::mt19937_64& rng);

/// Rescales every row onto the unit L2 ball: v <- v / max(1, |v|).
void project_rows_to_unit_ball(Matrix& m);

}  // namespace rulegat
