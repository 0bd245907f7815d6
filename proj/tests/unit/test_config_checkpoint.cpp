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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rulegat/cli/run_config.hpp"
#include "rulegat/common.hpp"
#include "rulegat/train/checkpoint.hpp"

namespace fs = std::filesystem;
using namespace rulegat;
namespace oracle = rulegat::testing;

TEST(TrainConfig, DefaultsAreValidAndRoundTrip) {
  TrainConfig c;
  EXPECT_NO_THROW(c.validate());
  TrainConfig d;
  d.dim = 7;
  d.apply(c.to_map());
  EXPECT_EQ(d.to_map(), c.to_map());
  EXPECT_EQ(d.dim, 100);
}

TEST(TrainConfig, ApplyParsesEveryKind) {
  TrainConfig c;
  c.apply({{"train.learning_rate", "0.01"},
           {"train.optimizer", "sgd"},
           {"train.mode", "optonly"},
           {"model.depth", "3"},
           {"rules.threshold", "1.5"}});
  EXPECT_DOUBLE_EQ(c.learning_rate, 0.01);
  EXPECT_EQ(c.optimizer, OptimizerKind::Sgd);
  EXPECT_EQ(c.mode, AblationMode::OptOnly);
  EXPECT_EQ(c.depth, 3);
  EXPECT_DOUBLE_EQ(c.rule_threshold, 1.5);
}

TEST(TrainConfig, BadValuesAreConfigErrors) {
  TrainConfig c;
  EXPECT_THROW(c.apply({{"train.nope", "1"}}), ConfigError);
  EXPECT_THROW(c.apply({{"model.dim", "ten"}}), ConfigError);
  EXPECT_THROW(c.apply({{"train.mode", "half"}}), ConfigError);
  for (auto [key, value] : std::vector<std::pair<std::string, std::string>>{{"model.depth", "4"},
                                                                           {"model.dim", "0"},
                                                                           {"train.margin", "-1"},
                                                                           {"model.dropout", "1"},
                                                                           {"model.attention_base", "1"},
                                                                           {"rules.threshold", "0"},
                                                                           {"train.batch_size", "0"}}) {
    TrainConfig d;
    d.apply({{key, value}});
    EXPECT_THROW(d.validate(), ConfigError) << key << "=" << value;
  }
}

TEST(TrainConfig, ModeNamesRoundTrip) {
  for (auto m : {AblationMode::Full, AblationMode::TriOnly, AblationMode::OptOnly, AblationMode::AggOnly}) {
    EXPECT_EQ(parse_mode(mode_name(m)), m);
  }
  EXPECT_FALSE(parse_mode("everything").has_value());
}

TEST(RunConfig, FileThenFlagsWithComments) {
  const auto file = parse_config_text("# comment\nmodel.dim = 16  # trailing\n\nrun.threads=2\nout.dir = a\n", "cfg");
  const auto run = resolve_config(file, {{"out.dir", "b"}, {"train.seed", "9"}});
  EXPECT_EQ(run.train.dim, 16);
  EXPECT_EQ(run.threads, 2);
  EXPECT_EQ(run.out_dir, fs::path("b"));
  EXPECT_EQ(run.train.seed, 9u);
  const auto snap = run.snapshot();
  EXPECT_EQ(snap.at("model.dim"), "16");
  EXPECT_EQ(snap.at("out.dir"), "b");
  EXPECT_THROW(parse_config_text("model.dim 16\n", "cfg"), ConfigError);
  EXPECT_THROW(parse_config_text(" = 3\n", "cfg"), ConfigError);
  EXPECT_THROW(read_config_file("/nonexistent/rulegat.cfg"), ConfigError);
  EXPECT_THROW(resolve_config({}, {{"run.threads", "-1"}}), ConfigError);
}

TEST(Checkpoint, RoundTripsModelRulesAndConfig) {
  std::mt19937_64 rng(1);
  TrainConfig cfg;
  cfg.dim = 6;
  cfg.depth = 3;
  Checkpoint ck;
  ck.vocab_hash = oracle::toy_store().vocab_hash();
  ck.model = init_model(cfg, 5, 2, rng);
  RuleCandidate rule;
  rule.signature = RuleSignature::transitivity(0, 1, 0);
  rule.promotion = 1.25;
  rule.support = 0.5;
  ck.rules.rules.push_back(rule);
  ck.rules.threshold = 1.1;
  ck.config = cfg.to_map();
  ck.best_epoch = 42;

  const auto path = fs::temp_directory_path() / "rulegat_ckpt_test.bin";
  write_checkpoint(path, ck);
  const auto back = read_checkpoint(path);
  EXPECT_EQ(back.vocab_hash, ck.vocab_hash);
  EXPECT_EQ(back.model.emb.entity, ck.model.emb.entity);
  EXPECT_EQ(back.model.emb.relation, ck.model.emb.relation);
  EXPECT_EQ(back.model.params.w1, ck.model.params.w1);
  EXPECT_EQ(back.model.params.w2, ck.model.params.w2);
  EXPECT_EQ(back.model.params.we, ck.model.params.we);
  EXPECT_EQ(back.model.params.wr, ck.model.params.wr);
  EXPECT_EQ(back.model.params.depth, 3);
  ASSERT_EQ(back.rules.rules.size(), 1u);
  EXPECT_EQ(back.rules.rules[0].signature, rule.signature);
  EXPECT_EQ(back.rules.rules[0].promotion, 1.25);
  EXPECT_EQ(back.rules.threshold, 1.1);
  EXPECT_EQ(back.config, ck.config);
  EXPECT_EQ(back.best_epoch, 42);

  // Truncation and foreign files are data errors.
  const auto size = fs::file_size(path);
  fs::resize_file(path, size / 2);
  EXPECT_THROW(read_checkpoint(path), DataError);
  std::ofstream(path, std::ios::trunc) << "not a checkpoint";
  EXPECT_THROW(read_checkpoint(path), DataError);
  fs::remove(path);
  EXPECT_THROW(read_checkpoint(path), DataError);
}
