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

#include "rulegat/encoder/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rulegat/encoder/ops.hpp"

namespace rulegat {

namespace {

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

void sort_unique(std::vector<EntityId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void ensure_shape(Matrix& m, Eigen::Index rows, Eigen::Index cols) {
  if (m.rows() != rows || m.cols() != cols) m.resize(rows, cols);
}

// Edge feature c = P_i + Q_src + sum_k R_k.
template <typename Out>
void edge_feature(const LayerTape& lt, EntityId target, const Edge& e, Out&& c) {
  c = lt.p.row(target) + lt.q.row(e.source);
  for (auto k : e.relations()) c += lt.r.row(k);
}

}  // namespace

void project_to_unit_ball(const Eigen::Ref<const Vector>& v, Eigen::Ref<Vector> out) {
  const double n = v.norm();
  out = n > 1.0 ? Vector(v / n) : Vector(v);
}

Vector project_to_unit_ball_vjp(const Eigen::Ref<const Vector>& v, const Eigen::Ref<const Vector>& upstream) {
  const double n = v.norm();
  if (n <= 1.0) return upstream;
  // d(v/|v|) = (I - u u^T) / |v| with u = v / |v|.
  const Vector u = v / n;
  return (upstream - u * u.dot(upstream)) / n;
}

double EncoderTape::max_attention_sum_error(const EdgeGraph& graph) const {
  double worst = 0.0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& edges = graph.layer(static_cast<int>(l + 1));
    for (auto i : layers[l].targets) {
      const auto n = edges.into(i).size();
      if (n == 0) continue;
      const auto b = edges.begin(i);
      double s = 0.0;
      for (std::size_t e = 0; e < n; ++e) s += layers[l].alpha[b + e];
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  return worst;
}

double EncoderTape::kink_distance(const EdgeGraph& graph) const {
  double best = std::numeric_limits<double>::infinity();
  if (!bypass) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& lt = layers[l];
      const auto& edges = graph.layer(static_cast<int>(l + 1));
      for (auto i : lt.targets) {
        const auto n = edges.into(i).size();
        if (n == 0) continue;
        const auto b = edges.begin(i);
        for (std::size_t e = 0; e < n; ++e) best = std::min(best, std::abs(lt.score[b + e]));
        best = std::min(best, lt.z.row(i).cwiseAbs().minCoeff());
      }
    }
    for (auto i : outputs) best = std::min(best, std::abs(entity_raw.row(i).norm() - 1.0));
  }
  return best;
}

void Encoder::forward(const EncoderParams& params, const EmbeddingState& emb,
                      std::span<const EntityId> outputs, const ForwardOptions& options,
                      std::mt19937_64* rng, EncoderTape& tape) const {
  const auto& graph = *graph_;
  const auto d = params.dim();
  const auto ne = static_cast<Eigen::Index>(graph.num_entities());
  const auto nr = emb.relation.rows();
  require(emb.entity.rows() == ne && emb.entity.cols() == d && emb.relation.cols() == d,
          "encoder: embedding shape does not match the graph");
  require(params.depth == graph.depth(), "encoder: depth mismatch between params and graph");
  require(options.dropout == 0.0 || rng != nullptr, "encoder: dropout needs an rng");

  tape.bypass = options.bypass;
  tape.outputs.assign(outputs.begin(), outputs.end());
  if (tape.outputs.empty()) {
    tape.outputs.resize(static_cast<std::size_t>(ne));
    std::iota(tape.outputs.begin(), tape.outputs.end(), EntityId{0});
  }
  sort_unique(tape.outputs);
  for (auto e : tape.outputs) require(e < ne, "encoder: output entity out of range");

  ensure_shape(tape.entity_out, ne, d);
  ensure_shape(tape.relation_out, nr, d);

  if (options.bypass) {
    for (auto i : tape.outputs) project_to_unit_ball(emb.entity.row(i).transpose(), tape.entity_out.row(i).transpose());
    for (Eigen::Index k = 0; k < nr; ++k)
      project_to_unit_ball(emb.relation.row(k).transpose(), tape.relation_out.row(k).transpose());
    tape.layers.clear();
    return;
  }

  // Active sets, last layer first: inputs of layer l are its targets plus
  // every source of their in-edges.
  const int depth = graph.depth();
  tape.layers.resize(static_cast<std::size_t>(depth));
  {
    std::vector<EntityId> needed = tape.outputs;
    for (int l = depth; l >= 1; --l) {
      auto& lt = tape.layers[static_cast<std::size_t>(l - 1)];
      lt.targets = needed;
      const auto& edges = graph.layer(l);
      for (auto i : lt.targets)
        for (const auto& e : edges.into(i)) needed.push_back(e.source);
      sort_unique(needed);
      lt.inputs = needed;
    }
  }

  const auto& first = tape.layers.front();
  ensure_shape(tape.initial, ne, d);
  for (auto j : first.inputs) tape.initial.row(j) = emb.entity.row(j);

  const auto w1a = params.target_block();
  const auto w1b = params.source_block();
  const auto w1c = params.relation_block();
  const double slope = params.slope;

  for (int l = 1; l <= depth; ++l) {
    auto& lt = tape.layers[static_cast<std::size_t>(l - 1)];
    const auto& edges = graph.layer(l);
    ensure_shape(lt.input, ne, d);
    ensure_shape(lt.p, ne, d);
    ensure_shape(lt.q, ne, d);
    ensure_shape(lt.z, ne, d);
    lt.score.resize(edges.edges.size());
    lt.alpha.resize(edges.edges.size());

    if (l == 1) {
      for (auto j : lt.inputs) lt.input.row(j) = emb.entity.row(j);
      lt.relation = emb.relation;
    } else {
      const auto& prev = tape.layers[static_cast<std::size_t>(l - 2)];
      lt.relation = prev.relation * params.wr.transpose();
    }
    lt.r.noalias() = lt.relation * w1c.transpose();

    // Masks are drawn serially in target order so the stream does not depend
    // on the thread count.
    if (options.dropout > 0.0) {
      lt.mask.assign(edges.edges.size(), 0.0);
      std::bernoulli_distribution keep(1.0 - options.dropout);
      const double scale = 1.0 / (1.0 - options.dropout);
      for (auto i : lt.targets) {
        const auto b = edges.begin(i);
        for (std::size_t e = 0; e < edges.into(i).size(); ++e) lt.mask[b + e] = keep(*rng) ? scale : 0.0;
      }
    } else {
      lt.mask.clear();
    }

    const auto n_in = static_cast<std::ptrdiff_t>(lt.inputs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t a = 0; a < n_in; ++a) {
      const auto j = lt.inputs[static_cast<std::size_t>(a)];
      lt.p.row(j).noalias() = lt.input.row(j) * w1a.transpose();
      lt.q.row(j).noalias() = lt.input.row(j) * w1b.transpose();
    }

    Matrix& out = l < depth ? tape.layers[static_cast<std::size_t>(l)].input : tape.final_layer;
    ensure_shape(out, ne, d);

    const auto n_t = static_cast<std::ptrdiff_t>(lt.targets.size());
#pragma omp parallel
    {
      Vector c(d);
      Vector z(d);
#pragma omp for schedule(dynamic, 16)
      for (std::ptrdiff_t a = 0; a < n_t; ++a) {
        const auto i = lt.targets[static_cast<std::size_t>(a)];
        const auto in = edges.into(i);
        if (in.empty()) {
          lt.z.row(i).setZero();
          out.row(i).setZero();
          continue;
        }
        const auto b = edges.begin(i);
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t e = 0; e < in.size(); ++e) {
          edge_feature(lt, i, in[e], c);
          const double s = params.w2.dot(c);
          lt.score[b + e] = s;
          lt.alpha[b + e] = leaky_relu(s, slope);
          m = std::max(m, lt.alpha[b + e]);
        }
        double total = 0.0;
        for (std::size_t e = 0; e < in.size(); ++e) total += (lt.alpha[b + e] = std::exp(lt.alpha[b + e] - m));
        z.setZero();
        for (std::size_t e = 0; e < in.size(); ++e) {
          lt.alpha[b + e] /= total;
          double w = in[e].logic + lt.alpha[b + e];
          if (!lt.mask.empty()) w *= lt.mask[b + e];
          if (w == 0.0) continue;
          edge_feature(lt, i, in[e], c);
          z += w * c;
        }
        lt.z.row(i) = z.transpose();
        for (Eigen::Index k = 0; k < d; ++k) out(i, k) = leaky_relu(z[k], slope);
      }
    }
  }

  tape.relation_final = tape.layers.back().relation * params.wr.transpose();
  ensure_shape(tape.entity_raw, ne, d);
  const auto n_out = static_cast<std::ptrdiff_t>(tape.outputs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t a = 0; a < n_out; ++a) {
    const auto i = tape.outputs[static_cast<std::size_t>(a)];
    tape.entity_raw.row(i).noalias() = tape.initial.row(i) * params.we.transpose();
    tape.entity_raw.row(i) += tape.final_layer.row(i);
    project_to_unit_ball(tape.entity_raw.row(i).transpose(), tape.entity_out.row(i).transpose());
  }
  for (Eigen::Index k = 0; k < nr; ++k)
    project_to_unit_ball(tape.relation_final.row(k).transpose(), tape.relation_out.row(k).transpose());
}

EncoderTape Encoder::forward_all(const EncoderParams& params, const EmbeddingState& emb) const {
  EncoderTape tape;
  forward(params, emb, {}, ForwardOptions{}, nullptr, tape);
  return tape;
}

void Encoder::backward(const EncoderParams& params, const EmbeddingState& emb, const EncoderTape& tape,
                       const Matrix& d_entity_out, const Matrix& d_relation_out, Gradients& grads) const {
  const auto& graph = *graph_;
  const auto d = params.dim();
  const auto ne = static_cast<Eigen::Index>(graph.num_entities());
  const auto nr = emb.relation.rows();
  require(d_entity_out.rows() == ne && d_entity_out.cols() == d && d_relation_out.rows() == nr &&
              d_relation_out.cols() == d,
          "encoder backward: upstream gradient shape mismatch");

  if (tape.bypass) {
    for (auto i : tape.outputs)
      grads.entity.row(i) += project_to_unit_ball_vjp(emb.entity.row(i).transpose(),
                                                      d_entity_out.row(i).transpose()).transpose();
    for (Eigen::Index k = 0; k < nr; ++k)
      grads.relation.row(k) += project_to_unit_ball_vjp(emb.relation.row(k).transpose(),
                                                        d_relation_out.row(k).transpose()).transpose();
    return;
  }

  const int depth = graph.depth();
  const double slope = params.slope;
  const auto w1a = params.target_block();
  const auto w1b = params.source_block();
  const auto w1c = params.relation_block();

  // Upstream of the last layer output and of the residual branch.
  Matrix d_cur(ne, d);
  Matrix d_initial(ne, d);
  for (auto j : tape.layers.front().inputs) d_initial.row(j).setZero();
  for (auto i : tape.outputs) {
    const Vector dv = project_to_unit_ball_vjp(tape.entity_raw.row(i).transpose(), d_entity_out.row(i).transpose());
    d_cur.row(i) = dv.transpose();
    grads.we.noalias() += dv * tape.initial.row(i);
    d_initial.row(i).noalias() += dv.transpose() * params.we;
  }
  Matrix d_rel(nr, d);
  for (Eigen::Index k = 0; k < nr; ++k)
    d_rel.row(k) = project_to_unit_ball_vjp(tape.relation_final.row(k).transpose(),
                                            d_relation_out.row(k).transpose()).transpose();
  // relation_final = G_L W_R^T.
  grads.wr.noalias() += d_rel.transpose() * tape.layers.back().relation;
  d_rel = d_rel * params.wr;

  const int threads = thread_count();
  std::vector<Matrix> dq_t(static_cast<std::size_t>(threads), Matrix(ne, d));
  std::vector<Matrix> dr_t(static_cast<std::size_t>(threads), Matrix(nr, d));
  std::vector<Vector> dw2_t(static_cast<std::size_t>(threads), Vector(d));
  Matrix dp(ne, d);
  Matrix d_in(ne, d);

  for (int l = depth; l >= 1; --l) {
    const auto& lt = tape.layers[static_cast<std::size_t>(l - 1)];
    const auto& edges = graph.layer(l);
    const auto n_t = static_cast<std::ptrdiff_t>(lt.targets.size());
    const auto n_in = static_cast<std::ptrdiff_t>(lt.inputs.size());

    // Zeroed outside the region: the team may be smaller than `threads`.
    for (int t = 0; t < threads; ++t) {
      for (auto j : lt.inputs) dq_t[static_cast<std::size_t>(t)].row(j).setZero();
      dr_t[static_cast<std::size_t>(t)].setZero();
      dw2_t[static_cast<std::size_t>(t)].setZero();
    }
#pragma omp parallel
    {
      const auto t = static_cast<std::size_t>(thread_id());
      Matrix& dq = dq_t[t];
      Matrix& dr = dr_t[t];
      Vector& dw2 = dw2_t[t];
      Vector c(d);
      Vector dz(d);
      Vector dc(d);
      std::vector<double> dalpha;

#pragma omp for schedule(dynamic, 16)
      for (std::ptrdiff_t a = 0; a < n_t; ++a) {
        const auto i = lt.targets[static_cast<std::size_t>(a)];
        const auto in = edges.into(i);
        dp.row(i).setZero();
        if (in.empty()) continue;
        const auto b = edges.begin(i);
        for (Eigen::Index k = 0; k < d; ++k) dz[k] = d_cur(i, k) * leaky_relu_grad(lt.z(i, k), slope);

        dalpha.assign(in.size(), 0.0);
        double dot = 0.0;
        for (std::size_t e = 0; e < in.size(); ++e) {
          const double m = lt.mask.empty() ? 1.0 : lt.mask[b + e];
          if (m == 0.0) continue;
          edge_feature(lt, i, in[e], c);
          dalpha[e] = m * dz.dot(c);
          dot += lt.alpha[b + e] * dalpha[e];
        }
        for (std::size_t e = 0; e < in.size(); ++e) {
          const double m = lt.mask.empty() ? 1.0 : lt.mask[b + e];
          const double w = (in[e].logic + lt.alpha[b + e]) * m;
          const double ds = lt.alpha[b + e] * (dalpha[e] - dot) * leaky_relu_grad(lt.score[b + e], slope);
          edge_feature(lt, i, in[e], c);
          dc = w * dz + ds * params.w2;
          dw2 += ds * c;
          dp.row(i) += dc.transpose();
          dq.row(in[e].source) += dc.transpose();
          for (auto k : in[e].relations()) dr.row(k) += dc.transpose();
        }
      }
    }

    // Deterministic reduction in thread order.
    Matrix& dq = dq_t[0];
    Matrix& dr = dr_t[0];
    for (int t = 1; t < threads; ++t) {
      for (auto j : lt.inputs) dq.row(j) += dq_t[static_cast<std::size_t>(t)].row(j);
      dr += dr_t[static_cast<std::size_t>(t)];
      dw2_t[0] += dw2_t[static_cast<std::size_t>(t)];
    }
    grads.w2 += dw2_t[0];

    Matrix dw1a = Matrix::Zero(d, d);
    Matrix dw1b = Matrix::Zero(d, d);
    for (auto i : lt.targets) dw1a.noalias() += dp.row(i).transpose() * lt.input.row(i);
    for (auto j : lt.inputs) dw1b.noalias() += dq.row(j).transpose() * lt.input.row(j);
    grads.w1.leftCols(d) += dw1a;
    grads.w1.middleCols(d, d) += dw1b;
    grads.w1.rightCols(d).noalias() += dr.transpose() * lt.relation;

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t a = 0; a < n_in; ++a) {
      const auto j = lt.inputs[static_cast<std::size_t>(a)];
      d_in.row(j).noalias() = dq.row(j) * w1b;
    }
    for (auto i : lt.targets) d_in.row(i).noalias() += dp.row(i) * w1a;

    // relation input of layer l: R = G W1c^T, and G = G_prev W_R^T for l > 1.
    d_rel.noalias() += dr * w1c;
    if (l > 1) {
      const auto& prev = tape.layers[static_cast<std::size_t>(l - 2)];
      grads.wr.noalias() += d_rel.transpose() * prev.relation;
      d_rel = d_rel * params.wr;
    }

    if (l > 1) {
      for (auto j : lt.inputs) d_cur.row(j) = d_in.row(j);
    } else {
      for (auto j : lt.inputs) grads.entity.row(j) += d_in.row(j) + d_initial.row(j);
    }
  }
  grads.relation += d_rel;
}

EmbeddingState encode_reference(const EncoderParams& params, const EdgeGraph& graph,
                                const EmbeddingState& emb) {
  auto prop = propagate(params, graph, emb.entity, emb.relation);
  Matrix raw = residual_combine(params, emb.entity, prop.entity);
  project_rows_to_unit_ball(raw);
  project_rows_to_unit_ball(prop.relation);
  return {std::move(raw), std::move(prop.relation)};
}

}  // namespace rulegat
