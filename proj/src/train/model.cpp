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

#include "rulegat/train/model.hpp"

#include <algorithm>
#include <cmath>

#include "rulegat/train/sampling.hpp"

namespace rulegat {

EncoderParams init_params(int dim, int depth, double slope, std::mt19937_64& rng) {
  auto p = EncoderParams::zeros(dim, depth);
  p.slope = slope;
  xavier_fill(p.w1, 3 * dim, dim, rng);
  Matrix w2(dim, 1);
  xavier_fill(w2, dim, 1, rng);
  p.w2 = w2.col(0);
  xavier_fill(p.we, dim, dim, rng);
  xavier_fill(p.wr, dim, dim, rng);
  return p;
}

EmbeddingState init_embeddings(std::size_t num_entities, std::size_t num_relations, int dim,
                               std::mt19937_64& rng) {
  EmbeddingState s{Matrix(static_cast<Eigen::Index>(num_entities), dim),
                   Matrix(static_cast<Eigen::Index>(num_relations), dim)};
  xavier_fill(s.entity, dim, dim, rng);
  xavier_fill(s.relation, dim, dim, rng);
  project_rows_to_unit_ball(s.entity);
  project_rows_to_unit_ball(s.relation);
  return s;
}

Model init_model(const TrainConfig& config, std::size_t num_entities, std::size_t num_relations,
                 std::mt19937_64& rng) {
  Model m;
  m.params = init_params(config.dim, config.depth, config.leaky_slope, rng);
  m.emb = init_embeddings(num_entities, num_relations, config.dim, rng);
  return m;
}

double hinge_loss(const Matrix& entity, const Matrix& relation, std::span<const TrainingSample> samples,
                  double margin, Matrix* d_entity, Matrix* d_relation) {
  if (samples.empty()) return 0.0;
  const double scale = 1.0 / static_cast<double>(samples.size());
  double total = 0.0;
  for (const auto& s : samples) {
    const double pos = formula_truth(entity, relation, s.positive);
    const double neg = formula_truth(entity, relation, s.negative);
    const double h = hinge_term(margin, pos, neg);
    total += h;
    // At exactly zero the hinge contributes no gradient.
    if (h > 0.0 && d_entity != nullptr && d_relation != nullptr) {
      accumulate_truth_gradient(entity, relation, s.positive, -scale, *d_entity, *d_relation);
      accumulate_truth_gradient(entity, relation, s.negative, scale, *d_entity, *d_relation);
    }
  }
  return total * scale;
}

std::vector<EntityId> sample_entities(std::span<const TrainingSample> samples) {
  std::vector<EntityId> out;
  out.reserve(samples.size() * 8);
  for (const auto& s : samples) {
    for (const auto* f : {&s.positive, &s.negative}) {
      for (std::size_t i = 0; i < f->size(); ++i) {
        out.push_back(f->triples[i].head);
        out.push_back(f->triples[i].tail);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double encoded_loss(const Model& model, const Encoder& encoder, std::span<const TrainingSample> samples,
                    double margin, const ForwardOptions& options, std::mt19937_64* rng, EncoderTape& tape,
                    Gradients* grads) {
  const auto outputs = sample_entities(samples);
  if (outputs.empty()) return 0.0;
  encoder.forward(model.params, model.emb, outputs, options, rng, tape);
  if (grads == nullptr) return hinge_loss(tape.entity_out, tape.relation_out, samples, margin, nullptr, nullptr);

  const auto d = model.params.dim();
  Matrix d_entity(tape.entity_out.rows(), d);
  for (auto e : outputs) d_entity.row(e).setZero();
  Matrix d_relation = Matrix::Zero(tape.relation_out.rows(), d);
  const double loss = hinge_loss(tape.entity_out, tape.relation_out, samples, margin, &d_entity, &d_relation);
  encoder.backward(model.params, model.emb, tape, d_entity, d_relation, *grads);
  return loss;
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate, const Model& model)
    : kind_(kind), lr_(learning_rate) {
  if (kind_ == OptimizerKind::Adam) {
    m_ = Gradients::zeros_like(model.emb, model.params);
    v_ = Gradients::zeros_like(model.emb, model.params);
  }
}

namespace {

template <typename P, typename G>
void adam_block(P& param, const G& grad, G& m, G& v, double lr, double c1, double c2) {
  m = Optimizer::kBeta1 * m + (1.0 - Optimizer::kBeta1) * grad;
  v = Optimizer::kBeta2 * v + (1.0 - Optimizer::kBeta2) * grad.cwiseProduct(grad);
  param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + Optimizer::kEpsilon);
}

}  // namespace

void Optimizer::step(Model& model, const Gradients& g) {
  ++t_;
  auto& p = model.params;
  if (kind_ == OptimizerKind::Sgd) {
    model.emb.entity -= lr_ * g.entity;
    model.emb.relation -= lr_ * g.relation;
    p.w1 -= lr_ * g.w1;
    p.w2 -= lr_ * g.w2;
    p.we -= lr_ * g.we;
    p.wr -= lr_ * g.wr;
    return;
  }
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
  adam_block(model.emb.entity, g.entity, m_.entity, v_.entity, lr_, c1, c2);
  adam_block(model.emb.relation, g.relation, m_.relation, v_.relation, lr_, c1, c2);
  adam_block(p.w1, g.w1, m_.w1, v_.w1, lr_, c1, c2);
  adam_block(p.w2, g.w2, m_.w2, v_.w2, lr_, c1, c2);
  adam_block(p.we, g.we, m_.we, v_.we, lr_, c1, c2);
  adam_block(p.wr, g.wr, m_.wr, v_.wr, lr_, c1, c2);
}

void project_embeddings(Model& model) {
  project_rows_to_unit_ball(model.emb.entity);
  project_rows_to_unit_ball(model.emb.relation);
}

}  // namespace rulegat
