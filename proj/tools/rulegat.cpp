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

// rulegat: mine -> ground -> train -> eval / classify, plus gradcheck.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/os.h>
#include <spdlog/spdlog.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rulegat/cli/run_config.hpp"
#include "rulegat/eval/report.hpp"
#include "rulegat/rules/miner.hpp"
#include "rulegat/train/checkpoint.hpp"
#include "rulegat/train/gradcheck.hpp"
#include "rulegat/train/trainer.hpp"

namespace fs = std::filesystem;
using namespace rulegat;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct Flags {
  std::string config;
  std::string dataset_dir;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::optional<int> threads;
  std::vector<std::string> overrides;  // key=value
  std::string rules;
  std::string checkpoint;
  bool verbose = false;
};

RunConfig load_config(const Flags& f) {
  ConfigValues file;
  if (!f.config.empty()) file = read_config_file(f.config);
  ConfigValues flags;
  for (const auto& kv : f.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
    flags[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (!f.dataset_dir.empty()) flags["data.dir"] = f.dataset_dir;
  if (!f.out.empty()) flags["out.dir"] = f.out;
  if (f.seed) flags["train.seed"] = std::to_string(*f.seed);
  if (!f.mode.empty()) flags["train.mode"] = f.mode;
  if (f.threads) flags["run.threads"] = std::to_string(*f.threads);
  auto rc = resolve_config(file, flags);
  if (rc.dataset_dir.empty()) throw ConfigError("no dataset: pass --dataset-dir or set data.dir");
  if (!fs::is_directory(rc.dataset_dir))
    throw DataError(fmt::format("dataset directory {} does not exist", rc.dataset_dir.string()));
#ifdef _OPENMP
  if (rc.threads > 0) omp_set_num_threads(rc.threads);
#endif
  fs::create_directories(rc.out_dir);
  return rc;
}

fs::path rules_path(const Flags& f, const RunConfig& rc) {
  return f.rules.empty() ? rc.out_dir / "rules.tsv" : fs::path(f.rules);
}

fs::path checkpoint_path(const Flags& f, const RunConfig& rc) {
  return f.checkpoint.empty() ? rc.out_dir / "model.ckpt" : fs::path(f.checkpoint);
}

std::string kind_table(const RuleKindCounts& c) {
  return fmt::format("inference\t{}\nantisymmetry\t{}\ntransitivity\t{}\ntotal\t{}\n", c.by_kind[0], c.by_kind[1],
                     c.by_kind[2], c.total());
}

int cmd_mine(const Flags& f) {
  const auto rc = load_config(f);
  const auto store = load_dataset_dir(rc.dataset_dir);
  const auto index = build_index(store);
  const auto candidates = mine_candidates(index);
  const auto rules = filter_rules(candidates, rc.train.rule_threshold);
  const auto out = rules_path(f, rc);
  write_rules(out, rules, store);
  const auto stats = fmt::format("candidates\t{}\nthreshold\t{}\n{}", candidates.size(), rules.threshold,
                                 kind_table(count_by_kind(rules)));
  fmt::output_file((rc.out_dir / "rules_stats.tsv").string()).print("{}", stats);
  fmt::print("{}", stats);
  spdlog::info("wrote {} rules to {}", rules.rules.size(), out.string());
  return kOk;
}

RuleSet load_rules(const Flags& f, const RunConfig& rc, const TripleStore& store, bool required) {
  const auto path = rules_path(f, rc);
  if (!fs::exists(path)) {
    if (required)
      throw ConfigError(fmt::format("mode {} needs a rules file; run `rulegat mine` first or pass --rules ({} not found)",
                                    mode_name(rc.train.mode), path.string()));
    return RuleSet{{}, rc.train.rule_threshold};
  }
  return read_rules(path, store, rc.train.rule_threshold);
}

int cmd_ground(const Flags& f) {
  const auto rc = load_config(f);
  const auto store = load_dataset_dir(rc.dataset_dir);
  const auto rules = load_rules(f, rc, store, /*required=*/true);
  const auto ground = ground_rules(rules, build_index(store));
  write_ground_rules(rc.out_dir / "ground_rules.tsv", ground, store);
  fmt::print("{}", kind_table(count_by_kind(ground)));
  return kOk;
}

int cmd_train(const Flags& f) {
  const auto rc = load_config(f);
  const auto store = load_dataset_dir(rc.dataset_dir);
  const bool need_rules = uses_rules(rc.train.mode);
  RuleSet rules = need_rules ? load_rules(f, rc, store, true) : RuleSet{{}, rc.train.rule_threshold};
  GroundRules ground;
  if (rules_in_loss(rc.train.mode)) {
    const auto gpath = rc.out_dir / "ground_rules.tsv";
    ground = fs::exists(gpath) ? read_ground_rules(gpath, store) : ground_rules(rules, build_index(store));
  }

  auto log = fmt::output_file((rc.out_dir / "train_log.jsonl").string());
  TrainHooks hooks;
  hooks.on_epoch = [&log](const EpochRecord& r) {
    log.print("{}\n", r.to_json());
    log.flush();
    spdlog::info("{}", r.to_json());
  };
  auto result = train(rc.train, store, rules, ground, hooks);
  log.close();
  spdlog::info("ablation: mode={} rule_pool={} logic_all_zero={}", mode_name(rc.train.mode), result.pool_rules,
               result.logic_all_zero);

  Checkpoint ck;
  ck.vocab_hash = store.vocab_hash();
  ck.model = std::move(result.model);
  if (rules_in_attention(rc.train.mode)) ck.rules = rules;
  ck.config = rc.snapshot();
  ck.best_epoch = result.best_epoch;
  const auto path = checkpoint_path(f, rc);
  write_checkpoint(path, ck);
  fmt::print("best_epoch\t{}\nepochs_run\t{}\nvalid_hits@10\t{}\ncheckpoint\t{}\n", result.best_epoch,
             result.epochs_run, result.best_valid_hits10, path.string());
  return kOk;
}

struct Decoded {
  TripleStore store;
  EmbeddingState view;
};

Decoded decode_checkpoint(const Flags& f, const RunConfig& rc) {
  auto store = load_dataset_dir(rc.dataset_dir);
  const auto ck = read_checkpoint(checkpoint_path(f, rc));
  if (ck.vocab_hash != store.vocab_hash())
    throw DataError(fmt::format("checkpoint vocabulary hash {:016x} does not match dataset {:016x}; refusing to "
                                "evaluate on a different id layout",
                                ck.vocab_hash, store.vocab_hash()));
  if (static_cast<std::size_t>(ck.model.emb.entity.rows()) != store.num_entities() ||
      static_cast<std::size_t>(ck.model.emb.relation.rows()) != store.num_relations())
    throw DataError("checkpoint embedding tables do not match the dataset size");
  // Graph settings come from the training snapshot so the encoder is rebuilt
  // exactly as it was trained.
  TrainConfig tc;
  tc.apply([&] {
    ConfigValues v;
    for (const auto& [k, val] : ck.config)
      if (k.starts_with("train.") || k.starts_with("model.") || k.starts_with("rules.")) v[k] = val;
    return v;
  }());
  const auto ctx = EncoderContext::build(store, ck.rules, tc);
  auto view = decode_all(ck.model, ctx.graph);
  return {std::move(store), std::move(view)};
}

void emit(const RunConfig& rc, const EvalReport& rep, const TripleStore& store, const std::string& name) {
  fmt::print("{}", format_table(rep, store.relations()));
  fmt::output_file((rc.out_dir / name).string()).print("{}", format_machine(rep, store.relations()));
}

int cmd_eval(const Flags& f) {
  const auto rc = load_config(f);
  const auto d = decode_checkpoint(f, rc);
  EvalReport rep;
  rep.link = link_prediction(truth_scorer(d.view), FilterIndex(d.store), d.store.num_entities(), d.store.test());
  emit(rc, rep, d.store, "eval_report.tsv");
  return kOk;
}

int cmd_classify(const Flags& f) {
  const auto rc = load_config(f);
  const auto d = decode_checkpoint(f, rc);
  const auto& s = d.store;
  const auto vneg = classification_negatives(s, s.valid(), rc.eval_seed);
  const auto tneg = classification_negatives(s, s.test(), rc.eval_seed + 1);
  const auto th = tune_thresholds(score_labeled(d.view, s.valid(), vneg), s.num_relations());
  EvalReport rep;
  rep.classification = classify(score_labeled(d.view, s.test(), tneg), th);
  emit(rc, rep, s, "classify_report.tsv");
  return kOk;
}

int cmd_gradcheck(const Flags& f) {
  const auto rc = load_config(f);
  const auto store = load_dataset_dir(rc.dataset_dir);
  if (store.train().empty()) throw DataError("gradcheck needs at least one training triple");
  const RuleSet rules = uses_rules(rc.train.mode) ? load_rules(f, rc, store, false) : RuleSet{};
  const auto ctx = EncoderContext::build(store, rules, rc.train);
  const Encoder encoder(ctx.graph);

  std::mt19937_64 rng(rc.train.seed);
  const auto model = init_model(rc.train, store.num_entities(), store.num_relations(), rng);
  const KnownTriple known = [&store](const Triple& t) { return store.in_train(t); };

  std::size_t checked = 0;
  std::size_t excluded = 0;
  double worst = 0.0;
  const auto& train_triples = store.train();
  for (std::size_t i = 0; i < rc.gradcheck_samples; ++i) {
    const auto& pos = train_triples[i % train_triples.size()];
    auto neg = corrupt_triple(rng, store.num_entities(), pos, known);
    if (!neg) continue;
    const TrainingSample sample{Formula::atomic(pos), Formula::atomic(*neg)};
    const auto r = gradient_check(model, encoder, std::span(&sample, 1), rc.train.margin);
    if (r.excluded) {
      ++excluded;
      fmt::print("sample {}\texcluded (kink distance {:.3g})\n", i, r.kink_distance);
      continue;
    }
    ++checked;
    worst = std::max(worst, r.max_relative_error);
    for (const auto& [g, e] : r.group_error) fmt::print("sample {}\t{}\t{:.3e}\n", i, g, e);
  }
  fmt::print("checked\t{}\nexcluded\t{}\nmax_relative_error\t{:.3e}\n", checked, excluded, worst);
  if (worst > 1e-4) {
    spdlog::error("gradient check failed: max relative error {:.3e} > 1e-4", worst);
    return kNumerical;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rulegat: rule-enhanced graph attention for knowledge graph completion"};
  app.require_subcommand(1);
  Flags flags;

  auto common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "flat key = value configuration file");
    sub->add_option("--dataset-dir", flags.dataset_dir, "directory holding train.txt, valid.txt, test.txt");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--mode", flags.mode, "ablation mode")
        ->check(CLI::IsMember({"full", "trionly", "optonly", "aggonly"}));
    sub->add_option("--threads", flags.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--set", flags.overrides, "override a config key: key=value (repeatable)");
    sub->add_option("--rules", flags.rules, "rules file (default <out>/rules.tsv)");
    sub->add_option("--checkpoint", flags.checkpoint, "checkpoint file (default <out>/model.ckpt)");
    sub->add_flag("-v,--verbose", flags.verbose, "debug logging");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Flags&);
  };
  const Command commands[] = {
      {"mine", "mine association rules from the training split", cmd_mine},
      {"ground", "instantiate mined rules over the training graph", cmd_ground},
      {"train", "train embeddings and encoder", cmd_train},
      {"eval", "filtered link prediction on the test split", cmd_eval},
      {"classify", "triplet classification with per-relation thresholds", cmd_classify},
      {"gradcheck", "compare analytic and finite-difference gradients", cmd_gradcheck},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Flags&)>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    subs.emplace_back(sub, c.run);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  spdlog::set_level(flags.verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    for (const auto& [sub, run] : subs) {
      if (sub->parsed()) return run(flags);
    }
  } catch (const ConfigError& e) {
    spdlog::error("configuration: {}", e.what());
    return kUsage;
  } catch (const NumericalError& e) {
    spdlog::error("numerical failure: {}", e.what());
    return kNumerical;
  } catch (const DataError& e) {
    spdlog::error("data: {}", e.what());
    return kData;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kData;
  }
  return kUsage;
}
