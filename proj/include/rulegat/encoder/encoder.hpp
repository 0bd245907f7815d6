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
#include <span>
#include <vector>

#include "rulegat/encoder/graph.hpp"
#include "rulegat/encoder/params.hpp"

namespace rulegat {

struct ForwardOptions {
  double dropout = 0.0;  ///< drop rate on combined edge weights; needs an rng
  bool bypass = false;   ///< decoder reads the raw embeddings (plain translational model)
};

/// Activations of one layer, kept for the backward pass. Matrices are sized
/// for the whole graph but only rows of the active sets are meaningful.
struct LayerTape {
  std::vector<EntityId> inputs;   ///< rows of `input` that are populated
  std::vector<EntityId> targets;  ///< entities this layer computes
  Matrix input;                   ///< entity representations entering the layer
  Matrix relation;                ///< relation representations entering the layer
  Matrix p;                       ///< input * W1_target^T
  Matrix q;                       ///< input * W1_source^T
  Matrix r;                       ///< relation * W1_relation^T
  Matrix z;                       ///< aggregate before the nonlinearity
  std::vector<double> score;      ///< per edge: w2 . c
  std::vector<double> alpha;      ///< per edge: neural attention
  std::vector<double> mask;       ///< per edge dropout multiplier; empty when off
};

/// Forward state of one encoder pass.
struct EncoderTape {
  bool bypass = false;
  std::vector<EntityId> outputs;  ///< entities whose decoder rows are valid
  std::vector<LayerTape> layers;
  Matrix initial;                 ///< input entity rows used by the residual
  Matrix final_layer;             ///< last layer output
  Matrix relation_final;          ///< relations after every layer update
  Matrix entity_raw;              ///< residual sum before projection
  Matrix entity_out;              ///< decoder entity rows (unit ball)
  Matrix relation_out;            ///< decoder relation rows (unit ball)

  /// max over computed targets with in-edges of |sum alpha - 1|.
  double max_attention_sum_error(const EdgeGraph& graph) const;

  /// Distance from the nearest non-differentiable point of the pass: attention
  /// scores, aggregates and projected norms versus their kinks.
  double kink_distance(const EdgeGraph& graph) const;
};

/// Rule-enhanced attention encoder over a fixed EdgeGraph.
///
/// Work is split over target entities with OpenMP. Only the entities needed
/// for the requested outputs are computed: the outputs themselves plus their
/// in-neighborhoods, recursively, one hop per layer.
class Encoder {
 public:
  explicit Encoder(const EdgeGraph& graph) : graph_(&graph) {}

  /// Encodes `outputs` (all entities when empty). `tape` is reused between
  /// calls to avoid reallocation.
  void forward(const EncoderParams& params, const EmbeddingState& emb,
               std::span<const EntityId> outputs, const ForwardOptions& options,
               std::mt19937_64* rng, EncoderTape& tape) const;

  EncoderTape forward_all(const EncoderParams& params, const EmbeddingState& emb) const;

  /// Accumulates into `grads` the gradient of a scalar loss whose partial
  /// derivatives w.r.t. tape.entity_out (rows in tape.outputs) and
  /// tape.relation_out are `d_entity_out` and `d_relation_out`.
  void backward(const EncoderParams& params, const EmbeddingState& emb, const EncoderTape& tape,
                const Matrix& d_entity_out, const Matrix& d_relation_out, Gradients& grads) const;

  const EdgeGraph& graph() const { return *graph_; }

 private:
  const EdgeGraph* graph_;
};

/// Serial full-graph reference of the decoder view: residual_combine(propagate)
/// followed by unit-ball projection of entity and relation rows.
EmbeddingState encode_reference(const EncoderParams& params, const EdgeGraph& graph,
                                const EmbeddingState& emb);

/// Radial projection of a row and its vector-Jacobian product.
void project_to_unit_ball(const Eigen::Ref<const Vector>& v, Eigen::Ref<Vector> out);
Vector project_to_unit_ball_vjp(const Eigen::Ref<const Vector>& v, const Eigen::Ref<const Vector>& upstream);

}  // namespace rulegat
