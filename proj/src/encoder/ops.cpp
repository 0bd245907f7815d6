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

#include "rulegat/encoder/ops.hpp"

#include <algorithm>
#include <cmath>

namespace rulegat {

Vector triple_feature(const EncoderParams& params, const Vector& h_target, const Vector& h_source,
                      const Vector& g) {
  const auto d = params.dim();
  require(h_target.size() == d && h_source.size() == d && g.size() == d,
          "triple_feature: dimension mismatch");
  Vector x(3 * d);
  x << h_target, h_source, g;
  return params.w1 * x;
}

double logic_attention(const LogicWeightTable& table, EntityId head, RelationId rel, EntityId tail) {
  return table.weight({head, rel, tail});
}

std::vector<double> neural_attention(const EncoderParams& params, std::span<const Vector> features) {
  std::vector<double> b(features.size());
  for (std::size_t e = 0; e < features.size(); ++e) {
    b[e] = leaky_relu(params.w2.dot(features[e]), params.slope);
  }
  if (b.empty()) return b;
  const double m = *std::max_element(b.begin(), b.end());
  double total = 0.0;
  for (auto& v : b) total += (v = std::exp(v - m));
  for (auto& v : b) v /= total;
  return b;
}

Vector aggregate_entity(std::span<const double> logic, std::span<const double> neural,
                        std::span<const Vector> features) {
  require(logic.size() == features.size() && neural.size() == features.size() && !features.empty(),
          "aggregate_entity: misaligned neighborhood");
  bool any = false;
  Vector out = Vector::Zero(features[0].size());
  for (std::size_t e = 0; e < features.size(); ++e) {
    const double w = logic[e] + neural[e];
    any |= w != 0.0;
    out += w * features[e];
  }
  require(any, "aggregate_entity: all combined weights are zero");
  return out;
}

Propagation propagate(const EncoderParams& params, const EdgeGraph& graph, const Matrix& entity,
                      const Matrix& relation) {
  const auto d = params.dim();
  require(entity.cols() == d && relation.cols() == d, "propagate: dimension mismatch");

  Matrix h = entity;
  Matrix g = relation;
  for (int l = 1; l <= graph.depth(); ++l) {
    const auto& layer = graph.layer(l);
    Matrix next = Matrix::Zero(h.rows(), d);
    for (EntityId i = 0; i < h.rows(); ++i) {
      const auto edges = layer.into(i);
      if (edges.empty()) continue;
      std::vector<Vector> features;
      std::vector<double> logic;
      for (const auto& e : edges) {
        Vector path = Vector::Zero(d);
        for (auto r : e.relations()) path += g.row(r).transpose();
        features.push_back(triple_feature(params, h.row(i).transpose(), h.row(e.source).transpose(), path));
        logic.push_back(e.logic);
      }
      const auto neural = neural_attention(params, features);
      const Vector z = aggregate_entity(logic, neural, features);
      for (Eigen::Index k = 0; k < d; ++k) next(i, k) = leaky_relu(z[k], params.slope);
    }
    h = std::move(next);
    g = g * params.wr.transpose();
  }
  return {std::move(h), std::move(g)};
}

Matrix residual_combine(const EncoderParams& params, const Matrix& initial, const Matrix& final_layer) {
  require(initial.rows() == final_layer.rows() && initial.cols() == params.dim() &&
              final_layer.cols() == params.dim(),
          "residual_combine: dimension mismatch");
  return initial * params.we.transpose() + final_layer;
}

}  // namespace rulegat
