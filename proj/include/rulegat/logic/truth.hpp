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

#include <array>
#include <span>

#include "rulegat/common.hpp"
#include "rulegat/rules/rule.hpp"

namespace rulegat {

// Soft truth values under product t-norm fuzzy logic.
//
// A triple's truth is 1 - |h + r - t|_1 / (3 sqrt(d)). With every vector in
// the unit L2 ball the residual's L1 norm is at most 3 sqrt(d), so truths stay
// in [0, 1]. Nothing is clipped.

enum class FormulaKind : std::uint8_t { Atomic, Inference, AntiSymmetry, Transitivity };

/// An atomic formula (one triple) or a ground rule. Rule triples are ordered
/// body first, head last.
struct Formula {
  FormulaKind kind = FormulaKind::Atomic;
  std::array<Triple, 3> triples{};

  std::size_t size() const {
    switch (kind) {
      case FormulaKind::Atomic: return 1;
      case FormulaKind::Transitivity: return 3;
      default: return 2;
    }
  }
  bool is_rule() const { return kind != FormulaKind::Atomic; }

  static Formula atomic(const Triple& t) { return {FormulaKind::Atomic, {t, Triple{}, Triple{}}}; }
  static Formula from_ground(const GroundRule& g);

  friend auto operator<=>(const Formula&, const Formula&) = default;
};

inline double t_conj(double a, double b) { return a * b; }
inline double t_disj(double a, double b) { return a + b - a * b; }
inline double t_neg(double a) { return 1.0 - a; }

double triple_truth(std::span<const double> head, std::span<const double> rel,
                    std::span<const double> tail);

/// Truth of `t` with entity rows from `entities` and relation rows from
/// `relations`.
double triple_truth(const Matrix& entities, const Matrix& relations, const Triple& t);

/// dI/dh (= dI/dr = -dI/dt): -sign(h + r - t) / (3 sqrt(d)), sign(0) = 0.
Vector triple_truth_gradient(std::span<const double> head, std::span<const double> rel,
                             std::span<const double> tail);

/// Closed-form rule truth from constituent truths (body first, head last):
/// one body atom: b*h - b + 1; two body atoms: b1*b2*h - b1*b2 + 1.
double compose_truth(FormulaKind kind, std::span<const double> constituents);

/// d compose_truth / d constituent_k, same layout as the input.
std::array<double, 3> compose_truth_gradient(FormulaKind kind, std::span<const double> constituents);

double formula_truth(const Matrix& entities, const Matrix& relations, const Formula& f);

/// Adds scale * dI(f) to the entity / relation gradient rows of the formula's
/// constituents.
void accumulate_truth_gradient(const Matrix& entities, const Matrix& relations, const Formula& f,
                               double scale, Matrix& d_entities, Matrix& d_relations);

/// Smallest |component| of h + r - t over the formula's triples; distance to
/// the nearest L1 kink.
double min_abs_residual(const Matrix& entities, const Matrix& relations, const Formula& f);

}  // namespace rulegat
