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

#include "rulegat/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rulegat/eval/ranking.hpp"

namespace rulegat {

EncoderContext EncoderContext::build(const TripleStore& store, const RuleSet& rules, const TrainConfig& config) {
  EncoderContext ctx;
  ctx.index = build_index(store);
  if (rules_in_attention(config.mode)) {
    ctx.logic = LogicWeightTable::build(rules, ctx.index, config.attention_base);
  }
  ctx.graph = EdgeGraph(ctx.index, ctx.logic, config.depth, config.neighbor_cap);
  return ctx;
}

std::string EpochRecord::to_json() const {
  const std::string hits = std::isnan(valid_hits10) ? "null" : fmt::format("{:.6f}", valid_hits10);
  return fmt::format(R"({{"epoch":{},"loss":{:.9g},"valid_hits10":{},"wall_s":{:.3f},"warmup":{}}})", epoch, loss,
                     hits, seconds, warmup ? "true" : "false");
}

EmbeddingState decode_all(const Model& model, const EdgeGraph& graph) {
  auto tape = Encoder(graph).forward_all(model.params, model.emb);
  return {std::move(tape.entity_out), std::move(tape.relation_out)};
}

namespace {

RuleKind rule_kind(FormulaKind k) {
  switch (k) {
    case FormulaKind::AntiSymmetry: return RuleKind::AntiSymmetry;
    case FormulaKind::Transitivity: return RuleKind::Transitivity;
    default: return RuleKind::Inference;
  }
}

double max_row_norm(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : m.rowwise().norm().maxCoeff();
}

class Run {
 public:
  Run(const TrainConfig& config, const TripleStore& store, const GroundRules& ground, const EncoderContext& ctx,
      const TrainHooks& hooks, TrainResult& result)
      : config_(config), store_(store), ctx_(ctx), encoder_(ctx.graph), hooks_(hooks), result_(result),
        rng_(config.seed) {
    for (const auto& t : store.train()) pool_.push_back(Formula::atomic(t));
    result_.pool_triples = pool_.size();
    if (rules_in_loss(config.mode)) {
      for (const auto& g : ground) pool_.push_back(Formula::from_ground(g));
      grounded_.insert(ground.begin(), ground.end());
    }
    result_.pool_rules = pool_.size() - result_.pool_triples;
    known_ = [&store](const Triple& t) { return store.in_train(t); };

    if (!store.valid().empty()) {
      std::vector<Triple> v = store.valid();
      if (config.valid_sample > 0 && config.valid_sample < v.size()) {
        std::mt19937_64 pick(config.seed ^ 0x5bd1e995ULL);
        std::shuffle(v.begin(), v.end(), pick);
        v.resize(config.valid_sample);
      }
      valid_ = std::move(v);
      filter_ = FilterIndex(store);
    }
  }

  void execute() {
    result_.model = init_model(config_, store_.num_entities(), store_.num_relations(), rng_);
    Model& model = result_.model;
    if (pool_.empty() || store_.num_entities() == 0) {
      spdlog::warn("training pool is empty; returning the initial model");
      return;
    }

    if (config_.warmup_epochs > 0) {
      Optimizer warm(config_.optimizer, config_.learning_rate, model);
      for (int e = 1; e <= config_.warmup_epochs; ++e) run_epoch(model, warm, e, /*warmup=*/true);
    }

    Optimizer opt(config_.optimizer, config_.learning_rate, model);
    Model best = model;
    double best_hits = -1.0;
    int best_epoch = 0;
    for (int epoch = 1; epoch <= config_.max_epochs; ++epoch) {
      auto rec = run_epoch(model, opt, epoch, /*warmup=*/false);
      result_.epochs_run = epoch;
      if (!valid_.empty() && (epoch % config_.eval_every == 0 || epoch == config_.max_epochs)) {
        const auto decoded = decode_all(model, ctx_.graph);
        rec.valid_hits10 = link_prediction(truth_scorer(decoded), filter_, store_.num_entities(), valid_).hits10;
        if (rec.valid_hits10 > best_hits) {
          best_hits = rec.valid_hits10;
          best_epoch = epoch;
          best = model;
        }
      }
      result_.log.back() = rec;
      if (hooks_.on_epoch) hooks_.on_epoch(rec);
      spdlog::debug("{}", rec.to_json());
      if (!valid_.empty() && epoch - best_epoch >= config_.patience) {
        result_.stopped_early = true;
        break;
      }
    }
    if (!valid_.empty() && best_hits >= 0.0) {
      model = std::move(best);
      result_.best_epoch = best_epoch;
      result_.best_valid_hits10 = best_hits;
    } else {
      result_.best_epoch = result_.epochs_run;
    }
  }

 private:
  std::vector<TrainingSample> make_batch(std::span<const std::size_t> order) {
    std::vector<TrainingSample> batch;
    batch.reserve(order.size() * static_cast<std::size_t>(config_.negatives));
    const auto ne = store_.num_entities();
    for (auto idx : order) {
      const auto& pos = pool_[idx];
      for (int k = 0; k < config_.negatives; ++k) {
        if (pos.kind == FormulaKind::Atomic) {
          if (auto n = corrupt_triple(rng_, ne, pos.triples[0], known_, &result_.corruption))
            batch.push_back({pos, Formula::atomic(*n)});
        } else {
          GroundRule g{rule_kind(pos.kind), pos.triples};
          if (auto n = corrupt_rule(rng_, ne, g, grounded_, &result_.corruption))
            batch.push_back({pos, Formula::from_ground(*n)});
        }
      }
    }
    return batch;
  }

  EpochRecord run_epoch(Model& model, Optimizer& opt, int epoch, bool warmup) {
    const auto start = std::chrono::steady_clock::now();
    // Warm-up trains triples only, with the encoder bypassed.
    const std::size_t pool_size = warmup ? result_.pool_triples : pool_.size();
    std::vector<std::size_t> order(pool_size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng_);

    ForwardOptions fwd;
    fwd.bypass = warmup;
    fwd.dropout = warmup ? 0.0 : config_.dropout;

    Gradients grads = Gradients::zeros_like(model.emb, model.params);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t b = 0; b < order.size(); b += config_.batch_size) {
      const auto n = std::min(config_.batch_size, order.size() - b);
      const auto batch = make_batch(std::span<const std::size_t>(order).subspan(b, n));
      if (batch.empty()) continue;
      grads.set_zero();
      const double loss = encoded_loss(model, encoder_, batch, config_.margin, fwd, &rng_, tape_, &grads);
      if (!std::isfinite(loss) || !grads.entity.allFinite() || !grads.w1.allFinite()) {
        throw NumericalError(fmt::format("non-finite loss or gradient at epoch {} batch {}", epoch, batches));
      }
      opt.step(model, grads);
      project_embeddings(model);
      loss_sum += loss;
      ++batches;
      if (hooks_.on_step) {
        StepInfo info;
        info.epoch = epoch;
        info.step = static_cast<std::size_t>(opt.steps());
        info.loss = loss;
        info.attention_sum_error = tape_.max_attention_sum_error(ctx_.graph);
        info.max_entity_norm = max_row_norm(model.emb.entity);
        info.max_relation_norm = max_row_norm(model.emb.relation);
        info.warmup = warmup;
        hooks_.on_step(info);
      }
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.loss = batches == 0 ? 0.0 : loss_sum / static_cast<double>(batches);
    rec.warmup = warmup;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result_.log.push_back(rec);
    if (warmup && hooks_.on_epoch) hooks_.on_epoch(rec);
    return rec;
  }

  const TrainConfig& config_;
  const TripleStore& store_;
  const EncoderContext& ctx_;
  Encoder encoder_;
  const TrainHooks& hooks_;
  TrainResult& result_;
  std::mt19937_64 rng_;
  std::vector<Formula> pool_;
  GroundRuleSet grounded_;
  KnownTriple known_;
  std::vector<Triple> valid_;
  FilterIndex filter_;
  EncoderTape tape_;
};

}  // namespace

TrainResult train(const TrainConfig& config, const TripleStore& store, const RuleSet& rules,
                  const GroundRules& ground, const TrainHooks& hooks) {
  config.validate();
  if (rules_in_loss(config.mode) && ground.empty()) {
    spdlog::warn("mode {} uses rules in the loss but no ground rules were given", mode_name(config.mode));
  }
  const auto ctx = EncoderContext::build(store, rules, config);
  TrainResult result;
  result.logic_all_zero = ctx.logic.all_zero();
  spdlog::info("training: mode={} triples={} ground_rules={} logic_weighted_triples={}", mode_name(config.mode),
               store.train().size(), rules_in_loss(config.mode) ? ground.size() : 0,
               ctx.logic.supported_triples());
  Run run(config, store, ground, ctx, hooks, result);
  run.execute();
  if (result.corruption.skipped > 0) {
    spdlog::warn("{} samples skipped: no valid corruption within {} tries", result.corruption.skipped,
                 kMaxCorruptionTries);
  }
  return result;
}

}  // namespace rulegat
