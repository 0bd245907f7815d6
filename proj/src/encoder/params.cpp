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

#include "rulegat/encoder/params.hpp"

#include <cmath>

namespace rulegat {

EncoderParams EncoderParams::zeros(Eigen::Index d, int depth) {
  EncoderParams p;
  p.w1 = Matrix::Zero(d, 3 * d);
  p.w2 = Vector::Zero(d);
  p.we = Matrix::Zero(d, d);
  p.wr = Matrix::Zero(d, d);
  p.depth = depth;
  return p;
}

EncoderParams EncoderParams::identity_like(Eigen::Index d, int depth) {
  auto p = zeros(d, depth);
  p.we.setIdentity();
  p.wr.setIdentity();
  return p;
}

Gradients Gradients::zeros_like(const EmbeddingState& emb, const EncoderParams& params) {
  Gradients g;
  g.entity = Matrix::Zero(emb.entity.rows(), emb.entity.cols());
  g.relation = Matrix::Zero(emb.relation.rows(), emb.relation.cols());
  g.w1 = Matrix::Zero(params.w1.rows(), params.w1.cols());
  g.w2 = Vector::Zero(params.w2.size());
  g.we = Matrix::Zero(params.we.rows(), params.we.cols());
  g.wr = Matrix::Zero(params.wr.rows(), params.wr.cols());
  return g;
}

void Gradients::set_zero() {
  entity.setZero();
  relation.setZero();
  w1.setZero();
  w2.setZero();
  we.setZero();
  wr.setZero();
}

double xavier_bound(Eigen::Index fan_in, Eigen::Index fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

void xavier_fill(Matrix& m, Eigen::Index fan_in, Eigen::Index fan_out, std::mt19937_64& rng) {
  const double b = xavier_bound(fan_in, fan_out);
  std::uniform_real_distribution<double> u(-b, b);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
}

void project_rows_to_unit_ball(Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n > 1.0) m.row(i) /= n;
  }
}

}  // namespace rulegat
