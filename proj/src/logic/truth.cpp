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

#include "rulegat/logic/truth.hpp"

#include <cmath>
#include <limits>

namespace rulegat {

Formula Formula::from_ground(const GroundRule& g) {
  Formula f;
  switch (g.kind) {
    case RuleKind::Inference: f.kind = FormulaKind::Inference; break;
    case RuleKind::AntiSymmetry: f.kind = FormulaKind::AntiSymmetry; break;
    case RuleKind::Transitivity: f.kind = FormulaKind::Transitivity; break;
  }
  f.triples = g.triples;
  return f;
}

namespace {

double inv_scale(std::size_t d) { return 1.0 / (3.0 * std::sqrt(static_cast<double>(d))); }

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::span<const double> row(const Matrix& m, std::uint32_t i) {
  return {m.data() + static_cast<std::ptrdiff_t>(i) * m.cols(), static_cast<std::size_t>(m.cols())};
}

}  // namespace

double triple_truth(std::span<const double> head, std::span<const double> rel,
                    std::span<const double> tail) {
  require(head.size() == rel.size() && rel.size() == tail.size() && !head.empty(),
          "triple_truth: dimension mismatch");
  double l1 = 0.0;
  for (std::size_t k = 0; k < head.size(); ++k) l1 += std::abs(head[k] + rel[k] - tail[k]);
  return 1.0 - l1 * inv_scale(head.size());
}

double triple_truth(const Matrix& entities, const Matrix& relations, const Triple& t) {
  return triple_truth(row(entities, t.head), row(relations, t.rel), row(entities, t.tail));
}

Vector triple_truth_gradient(std::span<const double> head, std::span<const double> rel,
                             std::span<const double> tail) {
  require(head.size() == rel.size() && rel.size() == tail.size() && !head.empty(),
          "triple_truth_gradient: dimension mismatch");
  const double s = inv_scale(head.size());
  Vector g(static_cast<Eigen::Index>(head.size()));
  for (std::size_t k = 0; k < head.size(); ++k) {
    g[static_cast<Eigen::Index>(k)] = -s * sign(head[k] + rel[k] - tail[k]);
  }
  return g;
}

double compose_truth(FormulaKind kind, std::span<const double> c) {
  switch (kind) {
    case FormulaKind::Atomic: return c[0];
    case FormulaKind::Inference:
    case FormulaKind::AntiSymmetry: return c[0] * c[1] - c[0] + 1.0;
    case FormulaKind::Transitivity: return c[0] * c[1] * c[2] - c[0] * c[1] + 1.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::array<double, 3> compose_truth_gradient(FormulaKind kind, std::span<const double> c) {
  switch (kind) {
    case FormulaKind::Atomic: return {1.0, 0.0, 0.0};
    case FormulaKind::Inference:
    case FormulaKind::AntiSymmetry: return {c[1] - 1.0, c[0], 0.0};
    case FormulaKind::Transitivity:
      return {c[1] * (c[2] - 1.0), c[0] * (c[2] - 1.0), c[0] * c[1]};
  }
  return {};
}

double formula_truth(const Matrix& entities, const Matrix& relations, const Formula& f) {
  std::array<double, 3> c{};
  for (std::size_t k = 0; k < f.size(); ++k) c[k] = triple_truth(entities, relations, f.triples[k]);
  return compose_truth(f.kind, std::span<const double>(c.data(), f.size()));
}

void accumulate_truth_gradient(const Matrix& entities, const Matrix& relations, const Formula& f,
                               double scale, Matrix& d_entities, Matrix& d_relations) {
  std::array<double, 3> c{};
  for (std::size_t k = 0; k < f.size(); ++k) c[k] = triple_truth(entities, relations, f.triples[k]);
  const auto outer = compose_truth_gradient(f.kind, std::span<const double>(c.data(), f.size()));

  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& t = f.triples[k];
    const double w = scale * outer[k];
    if (w == 0.0) continue;
    const Vector g = triple_truth_gradient(row(entities, t.head), row(relations, t.rel),
                                           row(entities, t.tail));
    d_entities.row(t.head) += w * g.transpose();
    d_relations.row(t.rel) += w * g.transpose();
    d_entities.row(t.tail) -= w * g.transpose();
  }
}

double min_abs_residual(const Matrix& entities, const Matrix& relations, const Formula& f) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& t = f.triples[k];
    for (Eigen::Index j = 0; j < entities.cols(); ++j) {
      m = std::min(m, std::abs(entities(t.head, j) + relations(t.rel, j) - entities(t.tail, j)));
    }
  }
  return m;
}

}  // namespace rulegat
