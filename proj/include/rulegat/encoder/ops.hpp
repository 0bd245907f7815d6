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
#include <vector>

#include "rulegat/encoder/graph.hpp"
#include "rulegat/encoder/params.hpp"

namespace rulegat {

// Building blocks of one attention layer, written directly from their
// definitions. `propagate` composes them serially over the whole graph and is
// the reference the parallel kernels in encoder.hpp are tested against.

inline double leaky_relu(double x, double slope) { return x >= 0.0 ? x : slope * x; }
inline double leaky_relu_grad(double x, double slope) { return x >= 0.0 ? 1.0 : slope; }

/// c = W1 [h_target; h_source; g].
Vector triple_feature(const EncoderParams& params, const Vector& h_target, const Vector& h_source,
                      const Vector& g);

/// Rule weight of triple (head, rel, tail).
double logic_attention(const LogicWeightTable& table, EntityId head, RelationId rel, EntityId tail);

/// softmax over the neighborhood of LeakyReLU(w2 . c). Empty input gives an
/// empty result.
std::vector<double> neural_attention(const EncoderParams& params, std::span<const Vector> features);

/// sum_e (logic_e + neural_e) c_e. The combined weights must not all vanish.
Vector aggregate_entity(std::span<const double> logic, std::span<const double> neural,
                        std::span<const Vector> features);

struct Propagation {
  Matrix entity;    ///< output of the last layer, before the residual
  Matrix relation;  ///< relation embeddings after `depth` updates
};

/// Serial full-graph forward pass over `graph.depth()` layers. Each target
/// aggregates its in-edges then applies LeakyReLU; targets without in-edges
/// output zero. Relations update as G <- G W_R^T after each layer.
Propagation propagate(const EncoderParams& params, const EdgeGraph& graph, const Matrix& entity,
                      const Matrix& relation);

/// H'' = H_init W_E^T + H_final (row-wise W_E h + h_final).
Matrix residual_combine(const EncoderParams& params, const Matrix& initial, const Matrix& final_layer);

}  // namespace rulegat
