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

#include "rulegat/train/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rulegat/train/sampling.hpp"

namespace rulegat {

double loss_kink_distance(const Model& model, const Encoder& encoder, std::span<const TrainingSample> samples,
                          double margin) {
  EncoderTape tape;
  encoder.forward(model.params, model.emb, sample_entities(samples), ForwardOptions{}, nullptr, tape);
  double dist = tape.kink_distance(encoder.graph());
  for (Eigen::Index k = 0; k < tape.relation_final.rows() && !tape.bypass; ++k)
    dist = std::min(dist, std::abs(tape.relation_final.row(k).norm() - 1.0));
  for (const auto& s : samples) {
    dist = std::min(dist, min_abs_residual(tape.entity_out, tape.relation_out, s.positive));
    dist = std::min(dist, min_abs_residual(tape.entity_out, tape.relation_out, s.negative));
    const double pos = formula_truth(tape.entity_out, tape.relation_out, s.positive);
    const double neg = formula_truth(tape.entity_out, tape.relation_out, s.negative);
    dist = std::min(dist, std::abs(margin - pos + neg));
  }
  return dist;
}

GradCheckResult gradient_check(const Model& model, const Encoder& encoder, std::span<const TrainingSample> samples,
                               double margin, const GradCheckOptions& options) {
  GradCheckResult result;
  result.kink_distance = loss_kink_distance(model, encoder, samples, margin);
  if (result.kink_distance < options.kink_threshold) {
    result.excluded = true;
    return result;
  }

  EncoderTape tape;
  Gradients analytic = Gradients::zeros_like(model.emb, model.params);
  encoded_loss(model, encoder, samples, margin, ForwardOptions{}, nullptr, tape, &analytic);

  Model probe = model;
  auto loss_at = [&]() { return encoded_loss(probe, encoder, samples, margin, ForwardOptions{}, nullptr, tape, nullptr); };

  // Walks every entry of one block, perturbing it in `probe`.
  auto check_block = [&](const std::string& name, auto& block, const auto& grad) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < block.size(); ++i) {
      double& x = block.data()[i];
      const double saved = x;
      x = saved + options.step;
      const double up = loss_at();
      x = saved - options.step;
      const double down = loss_at();
      x = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double a = grad.data()[i];
      const double denom = std::max({std::abs(a), std::abs(numeric), options.floor});
      worst = std::max(worst, std::abs(a - numeric) / denom);
    }
    result.group_error[name] = worst;
    result.entries += static_cast<std::size_t>(block.size());
    result.max_relative_error = std::max(result.max_relative_error, worst);
  };

  check_block("entity", probe.emb.entity, analytic.entity);
  check_block("relation", probe.emb.relation, analytic.relation);
  check_block("w1", probe.params.w1, analytic.w1);
  check_block("w2", probe.params.w2, analytic.w2);
  check_block("we", probe.params.we, analytic.we);
  check_block("wr", probe.params.wr, analytic.wr);
  return result;
}

}  // namespace rulegat
