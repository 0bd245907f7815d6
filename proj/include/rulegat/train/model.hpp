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

#include "rulegat/encoder/encoder.hpp"
#include "rulegat/logic/truth.hpp"
#include "rulegat/train/config.hpp"

namespace rulegat {

/// Trainable state: input embeddings and encoder weights.
struct Model {
  EmbeddingState emb;
  EncoderParams params;
};

/// Encoder weights drawn with the fan-balanced uniform scheme.
EncoderParams init_params(int dim, int depth, double slope, std::mt19937_64& rng);

/// Embedding rows drawn uniformly in +-sqrt(3/d) (fan-balanced for a d x d
/// map) then projected onto the unit ball.
EmbeddingState init_embeddings(std::size_t num_entities, std::size_t num_relations, int dim,
                               std::mt19937_64& rng);

Model init_model(const TrainConfig& config, std::size_t num_entities, std::size_t num_relations,
                 std::mt19937_64& rng);

/// A positive formula and one of its corruptions.
struct TrainingSample {
  Formula positive;
  Formula negative;
};

/// Mean hinge loss of `samples` read from the decoder view. When `d_entity`
/// and `d_relation` are given, adds the loss gradient w.r.t. the decoder rows.
double hinge_loss(const Matrix& entity, const Matrix& relation, std::span<const TrainingSample> samples,
                  double margin, Matrix* d_entity, Matrix* d_relation);

/// Distinct entities read by the samples' formulas.
std::vector<EntityId> sample_entities(std::span<const TrainingSample> samples);

/// Encodes the samples' entities, returns the mean hinge loss and, when
/// `grads` is set, accumulates the gradient of every trainable block.
double encoded_loss(const Model& model, const Encoder& encoder, std::span<const TrainingSample> samples,
                    double margin, const ForwardOptions& options, std::mt19937_64* rng, EncoderTape& tape,
                    Gradients* grads);

/// Plain stochastic gradient or adaptive-moment updates over every block.
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, double learning_rate, const Model& model);

  void step(Model& model, const Gradients& grads);
  long steps() const { return t_; }

  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

 private:
  OptimizerKind kind_;
  double lr_;
  long t_ = 0;
  Gradients m_;
  Gradients v_;
};

/// Projects every entity and relation row onto the unit ball.
void project_embeddings(Model& model);

}  // namespace rulegat
