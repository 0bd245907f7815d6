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

// Acceptance runner. Each criterion prints one PASS/FAIL/SKIP line; the exit
// code is 0 on pass, 1 on failure and 77 when required data is absent.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "oracles.hpp"
#include "rulegat/eval/classification.hpp"
#include "rulegat/eval/ranking.hpp"
#include "rulegat/rules/miner.hpp"
#include "rulegat/train/gradcheck.hpp"
#include "rulegat/train/trainer.hpp"

namespace fs = std::filesystem;
using namespace rulegat;
namespace oracle = rulegat::testing;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kSkip = 77;

struct Outcome {
  int code = kPass;
  std::string detail;
};

Outcome pass(std::string d) { return {kPass, std::move(d)}; }
Outcome fail(std::string d) { return {kFail, std::move(d)}; }
Outcome skip(std::string d) { return {kSkip, std::move(d)}; }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// ---------------------------------------------------------------------------
// 1. Mining matches the brute-force enumerator on random graphs.

Outcome mining_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::size_t rules_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_graph(rng, 30, 5, 80);
    const NeighborhoodIndex idx(g.num_entities, g.triples);
    const auto oracle = oracle::brute_force_mine(g.num_entities, g.num_relations, g.triples);

    const auto s = extract_samples(idx);
    std::set<std::array<std::uint32_t, 4>> inf, anti;
    std::set<std::array<std::uint32_t, 6>> tr;
    for (const auto& x : s.inference) inf.insert({x.first.head, x.first.tail, x.first.rel, x.second.rel});
    for (const auto& x : s.antisymmetry) anti.insert({x.forward.head, x.forward.tail, x.forward.rel, x.backward.rel});
    for (const auto& x : s.transitivity)
      tr.insert({x.first.head, x.first.tail, x.second.tail, x.first.rel, x.second.rel, x.witness.rel});
    if (inf != oracle.inference || anti != oracle.antisymmetry || tr != oracle.transitivity ||
        inf.size() != s.inference.size() || anti.size() != s.antisymmetry.size() ||
        tr.size() != s.transitivity.size())
      return fail(fmt::format("graph {}: rule samples differ", trial));

    for (const auto& mined : {mine_candidates(idx), mine_candidates_reference(idx)}) {
      if (mined.size() != oracle.rules.size()) return fail(fmt::format("graph {}: candidate count differs", trial));
      for (const auto& c : mined) {
        const auto it = oracle.rules.find(c.signature);
        if (it == oracle.rules.end()) return fail(fmt::format("graph {}: unexpected candidate", trial));
        const auto& o = it->second;
        const auto& k = c.counts;
        if (c.frequency != o.frequency || k.body != o.body || k.head != o.head || k.joint != o.joint ||
            k.entities != o.entities || c.scored != o.defined)
          return fail(fmt::format("graph {}: counts differ", trial));
        if (!o.defined) continue;
        // Exact rationals from the counts, and the doubles they round to.
        using oracle::Fraction;
        if (Fraction::make(k.joint, k.entities) != o.support || Fraction::make(k.joint, k.body) != o.confidence ||
            Fraction::make(k.joint * k.entities, k.body * k.head) != o.promotion ||
            c.support != o.support.value() || c.confidence != o.confidence.value() ||
            c.promotion != o.promotion.value())
          return fail(fmt::format("graph {}: scores differ", trial));
        ++rules_checked;
      }
    }
  }
  const double t = seconds_since(start);
  if (t >= 30.0) return fail(fmt::format("exact, but took {:.1f}s (limit 30s)", t));
  return pass(fmt::format("100 graphs, {} scored candidates exact, {:.2f}s", rules_checked, t));
}

// ---------------------------------------------------------------------------
// 2. The worked support/confidence/promotion example.

Outcome worked_example() {
  // 10000 entities, t(x) = x + 1 mod N. r1 on x < 6000, r2 on x < 4000 and
  // 6000 <= x < 9500: 6000 body, 7500 head, 4000 joint.
  constexpr std::size_t n = 10000;
  std::vector<Triple> triples;
  for (EntityId x = 0; x < n; ++x) {
    const EntityId y = static_cast<EntityId>((x + 1) % n);
    if (x < 6000) triples.push_back({x, 0, y});
    if (x < 4000 || (x >= 6000 && x < 9500)) triples.push_back({x, 1, y});
  }
  const auto store = oracle::make_store(n, 2, triples);
  const auto idx = build_index(store);
  for (const auto& mined : {mine_candidates(idx), mine_candidates_reference(idx)}) {
    const auto it = std::ranges::find_if(
        mined, [](const RuleCandidate& c) { return c.signature == RuleSignature::inference(0, 1); });
    if (it == mined.end()) return fail("rule r1 => r2 not mined");
    const auto& k = it->counts;
    if (k.entities != 10000 || k.body != 6000 || k.head != 7500 || k.joint != 4000)
      return fail(fmt::format("counts N={} body={} head={} joint={}", k.entities, k.body, k.head, k.joint));
    if (it->support != 0.4 || it->confidence != 2.0 / 3.0 || it->promotion != 8.0 / 9.0)
      return fail(fmt::format("support {} confidence {} promotion {}", it->support, it->confidence, it->promotion));
  }
  return pass("support 0.4, confidence 2/3, promotion 8/9 (parallel and reference miners)");
}

// ---------------------------------------------------------------------------
// 3. Truth values stay in [0, 1]; a false body makes the rule vacuously true.

Outcome truth_bounds() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::size_t violations = 0;
  std::size_t evaluated = 0;
  double vacuous_error = 0.0;
  for (Eigen::Index d : {1, 4, 16, 64}) {
    // 10000 embeddings per dimension, sampled inside the unit ball.
    const Eigen::Index ne = 9000;
    const Eigen::Index nr = 1000;
    auto sample = [&](Eigen::Index rows) {
      Matrix m(rows, d);
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = gauss(rng);
        // Half on the sphere, half inside.
        const double radius = i % 2 == 0 ? 1.0 : std::pow(unit(rng), 1.0 / static_cast<double>(d));
        m.row(i) *= radius / m.row(i).norm();
      }
      return m;
    };
    const Matrix e = sample(ne);
    const Matrix r = sample(nr);
    std::uniform_int_distribution<EntityId> ent(0, static_cast<EntityId>(ne - 1));
    std::uniform_int_distribution<RelationId> rel(0, static_cast<RelationId>(nr - 1));
    for (int k = 0; k < 10000; ++k) {
      const Triple a{ent(rng), rel(rng), ent(rng)}, b{ent(rng), rel(rng), ent(rng)}, c{ent(rng), rel(rng), ent(rng)};
      for (const auto& f : {Formula::atomic(a), Formula{FormulaKind::Inference, {a, b, Triple{}}},
                            Formula{FormulaKind::AntiSymmetry, {a, b, Triple{}}},
                            Formula{FormulaKind::Transitivity, {a, b, c}}}) {
        const double v = formula_truth(e, r, f);
        ++evaluated;
        if (!(v >= 0.0 && v <= 1.0)) ++violations;
      }
    }
    // Antipodal h, r and t maximise the residual: truth exactly 0.
    Matrix h = Matrix::Zero(2, d), g = Matrix::Zero(1, d);
    h(0, 0) = 1.0;
    h(1, 0) = -1.0;
    g(0, 0) = 1.0;
    const double floor = triple_truth(h, g, {0, 0, 1});
    if (d == 1 && std::abs(floor) > 1e-12) ++violations;
    for (double head : {0.0, 0.3, 1.0}) {
      const std::array<double, 2> c2 = {0.0, head};
      const std::array<double, 3> c3a = {0.0, 0.7, head};
      const std::array<double, 3> c3b = {0.6, 0.0, head};
      vacuous_error = std::max({vacuous_error, std::abs(compose_truth(FormulaKind::Inference, c2) - 1.0),
                                std::abs(compose_truth(FormulaKind::AntiSymmetry, c2) - 1.0),
                                std::abs(compose_truth(FormulaKind::Transitivity, c3a) - 1.0),
                                std::abs(compose_truth(FormulaKind::Transitivity, c3b) - 1.0)});
    }
  }
  if (violations > 0) return fail(fmt::format("{} of {} truths outside [0,1]", violations, evaluated));
  if (vacuous_error > 1e-12) return fail(fmt::format("vacuous truth error {:.3g}", vacuous_error));
  return pass(fmt::format("{} truths in [0,1], vacuous-truth error {:.1g}", evaluated, vacuous_error));
}

// ---------------------------------------------------------------------------
// 4. Analytic gradients match central differences at non-kink points.

Outcome gradient_checks() {
  const auto start = Clock::now();
  std::mt19937_64 rng(4);
  int checked = 0;
  int excluded = 0;
  double worst = 0.0;
  std::string worst_where;
  const AblationMode modes[] = {AblationMode::Full, AblationMode::TriOnly, AblationMode::OptOnly,
                                AblationMode::AggOnly};
  for (int attempt = 0; checked < 50 && attempt < 500; ++attempt) {
    const std::uint64_t seed = rng();
    const auto planted = oracle::planted_rule_graph(seed, 24, 2.0, 2, 0.2);
    const auto idx = build_index(planted.store);
    const auto rules = filter_rules(mine_candidates(idx), 1.0);
    const auto ground = ground_rules(rules, idx);

    TrainConfig cfg;
    cfg.dim = 8;
    cfg.depth = 1 + static_cast<int>(seed % 2);
    cfg.mode = modes[(seed >> 1) % 4];
    cfg.neighbor_cap = 4;
    cfg.seed = seed;
    const auto ctx = EncoderContext::build(planted.store, rules, cfg);
    const Encoder enc(ctx.graph);
    std::mt19937_64 local(seed);
    Model model = init_model(cfg, planted.store.num_entities(), planted.store.num_relations(), local);
    model.params.w2 *= 4.0;  // sharper attention than at initialisation

    const KnownTriple known = [&](const Triple& t) { return planted.store.in_train(t); };
    std::vector<TrainingSample> samples;
    const auto& train = planted.store.train();
    for (int k = 0; k < 2; ++k) {
      const auto& t = train[local() % train.size()];
      if (auto n = corrupt_triple(local, planted.store.num_entities(), t, known))
        samples.push_back({Formula::atomic(t), Formula::atomic(*n)});
    }
    if (rules_in_loss(cfg.mode) && !ground.empty()) {
      const GroundRuleSet grounded(ground.begin(), ground.end());
      const auto& g = ground[local() % ground.size()];
      if (auto n = corrupt_rule(local, planted.store.num_entities(), g, grounded))
        samples.push_back({Formula::from_ground(g), Formula::from_ground(*n)});
    }
    if (samples.empty()) continue;

    const auto r = gradient_check(model, enc, samples, 1.0);
    if (r.excluded) {
      ++excluded;
      continue;
    }
    ++checked;
    if (r.max_relative_error > worst) {
      worst = r.max_relative_error;
      for (const auto& [g, e] : r.group_error)
        if (e == worst) worst_where = fmt::format("{} (mode {}, depth {})", g, mode_name(cfg.mode), cfg.depth);
    }
  }
  const double t = seconds_since(start);
  if (checked < 50) return fail(fmt::format("only {} non-kink configurations found", checked));
  if (worst > 1e-4) return fail(fmt::format("max relative error {:.3e} in {}", worst, worst_where));
  if (t >= 300.0) return fail(fmt::format("took {:.0f}s (limit 300s)", t));
  return pass(fmt::format("50 configurations ({} excluded near kinks), max relative error {:.2e}, {:.1f}s", excluded,
                          worst, t));
}

// ---------------------------------------------------------------------------
// 5. Attention normalisation and the unit-ball constraint hold at every step.

Outcome step_invariants() {
  const auto planted = oracle::planted_rule_graph(5, 60, 2.0, 2, 0.2);
  const auto idx = build_index(planted.store);
  const auto rules = filter_rules(mine_candidates(idx), 1.0);
  const auto ground = ground_rules(rules, idx);
  TrainConfig cfg;
  cfg.dim = 16;
  cfg.batch_size = 32;
  cfg.max_epochs = 5;
  cfg.learning_rate = 0.05;  // large steps stress the projection
  std::size_t steps = 0;
  double worst_alpha = 0.0;
  double worst_norm = 0.0;
  TrainHooks hooks;
  hooks.on_step = [&](const StepInfo& s) {
    ++steps;
    worst_alpha = std::max(worst_alpha, s.attention_sum_error);
    worst_norm = std::max({worst_norm, s.max_entity_norm, s.max_relation_norm});
  };
  for (auto mode : {AblationMode::Full, AblationMode::TriOnly}) {
    cfg.mode = mode;
    cfg.warmup_epochs = mode == AblationMode::Full ? 1 : 0;
    train(cfg, planted.store, rules, ground, hooks);
  }
  if (steps == 0) return fail("no training steps ran");
  if (worst_alpha > 1e-9) return fail(fmt::format("|sum alpha - 1| reached {:.3e}", worst_alpha));
  if (worst_norm > 1.0 + 1e-12) return fail(fmt::format("embedding norm reached {:.17g}", worst_norm));
  return pass(fmt::format("{} steps, max |sum alpha - 1| {:.1e}, max norm {:.17g}", steps, worst_alpha, worst_norm));
}

// ---------------------------------------------------------------------------
// 6. Rules help on a graph with a planted inference rule.

TrainConfig planted_config(AblationMode mode, std::uint64_t seed) {
  TrainConfig c;
  c.mode = mode;
  c.seed = seed;
  c.dim = 32;
  c.depth = 1;
  c.neighbor_cap = 0;
  c.batch_size = 128;
  c.learning_rate = 0.01;
  c.margin = 0.25;
  c.dropout = 0.0;
  c.max_epochs = 60;
  c.rule_threshold = 1.0;
  return c;
}

double planted_mrr(const oracle::PlantedGraph& g, const RuleSet& rules, const GroundRules& ground,
                   AblationMode mode, std::uint64_t seed) {
  const auto cfg = planted_config(mode, seed);
  const auto result = train(cfg, g.store, uses_rules(mode) ? rules : RuleSet{}, ground);
  const auto ctx = EncoderContext::build(g.store, rules, cfg);
  const auto decoded = decode_all(result.model, ctx.graph);
  return link_prediction(truth_scorer(decoded), FilterIndex(g.store), g.store.num_entities(), g.store.test()).mrr;
}

Outcome planted_rule_benchmark() {
  const auto start = Clock::now();
  int wins = 0;
  std::string rows;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    // Out-degree 1 keeps the source relation learnable by a translation, so
    // the withheld twins are recoverable only through the rule.
    const auto g = oracle::planted_rule_graph(seed, 200, 1.0, 3, 0.3);
    const auto idx = build_index(g.store);
    const auto rules = filter_rules(mine_candidates(idx), 1.0);
    const auto ground = ground_rules(rules, idx);
    const double full = planted_mrr(g, rules, ground, AblationMode::Full, seed);
    const double tri = planted_mrr(g, rules, ground, AblationMode::TriOnly, seed);
    wins += full > tri;
    rows += fmt::format(" {}:{:.3f}/{:.3f}", seed, full, tri);
    spdlog::info("planted seed {}: full MRR {:.4f}, trionly MRR {:.4f}", seed, full, tri);
  }
  const double t = seconds_since(start);
  const auto detail = fmt::format("Full beats TriOnly in {}/10 seeds (full/trionly MRR{}), {:.0f}s", wins, rows, t);
  if (wins < 8) return fail(detail);
  if (t >= 1200.0) return fail(detail + " (limit 1200s)");
  return pass(detail);
}

// ---------------------------------------------------------------------------
// 7 and 8. Public benchmark runs; skipped when the data is not on disk.

std::optional<fs::path> find_dataset(const std::string& name) {
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("RULEGAT_DATA_DIR")) roots.emplace_back(env);
  roots.emplace_back("data");
  roots.emplace_back(fs::path(RULEGAT_SOURCE_DIR) / "data");
  for (const auto& r : roots) {
    const auto dir = r / name;
    if (fs::exists(dir / "train.txt") && fs::exists(dir / "valid.txt") && fs::exists(dir / "test.txt")) return dir;
  }
  return std::nullopt;
}

Outcome fb15k237_mining() {
  const auto dir = find_dataset("FB15k-237");
  if (!dir) return skip("FB15k-237 not found under $RULEGAT_DATA_DIR or data/");
  const auto start = Clock::now();
  const auto store = load_dataset_dir(*dir);
  const auto rules = filter_rules(mine_candidates(build_index(store)), 0.5);
  const double t = seconds_since(start);
  const auto k = count_by_kind(rules).by_kind;
  const auto detail =
      fmt::format("inference {}, anti-symmetry {}, transitivity {} rules in {:.0f}s", k[0], k[1], k[2], t);
  if (t >= 600.0) return fail(detail + " (limit 600s)");
  if (k[0] == 0 || k[1] == 0 || k[2] == 0) return fail(detail + ": a rule kind is empty");
  if (!(k[1] > k[2] && k[2] > k[0])) return fail(detail + ": expected anti-symmetry > transitivity > inference");
  return pass(detail);
}

Outcome wn18rr_sanity() {
  const auto dir = find_dataset("WN18RR");
  if (!dir) return skip("WN18RR not found under $RULEGAT_DATA_DIR or data/");
  const auto start = Clock::now();
  const auto store = load_dataset_dir(*dir);
  TrainConfig cfg;
  cfg.mode = AblationMode::TriOnly;
  cfg.dim = 50;
  cfg.max_epochs = 200;
  cfg.eval_every = 10;
  cfg.patience = 50;
  cfg.valid_sample = 2000;
  cfg.batch_size = 4096;
  const auto result = train(cfg, store, {}, {});
  const auto ctx = EncoderContext::build(store, {}, cfg);
  const auto decoded = decode_all(result.model, ctx.graph);
  const auto m = link_prediction(truth_scorer(decoded), FilterIndex(store), store.num_entities(), store.test());
  const double t = seconds_since(start);
  const auto detail = fmt::format("test Hits@10 {:.4f} (MRR {:.4f}) after {} epochs, {:.0f}s", m.hits10, m.mrr,
                                  result.epochs_run, t);
  if (t > 4 * 3600.0) return fail(detail + " (limit 4h)");
  return m.hits10 >= 0.30 ? pass(detail) : fail(detail + ", floor 0.30");
}

// ---------------------------------------------------------------------------
// 9. Evaluator arithmetic against hand-derived values.

Outcome evaluator_battery() {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) failures.emplace_back(what);
  };
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };

  // Tie rule: five candidates with equal scores rank the gold third.
  const FilterIndex none(std::span<const Triple>{});
  const CandidateScorer flat = [](const Triple&, Side, std::span<double> s) { std::fill(s.begin(), s.end(), 0.5); };
  const auto tie = rank_triple(flat, none, 5, {0, 0, 1});
  expect(tie.head_rank == 3 && tie.tail_rank == 3, "tie rule");

  // Filtering: the only better candidate is a known triple.
  const std::vector<Triple> known = {{0, 0, 1}, {0, 0, 2}};
  const FilterIndex filter(known);
  const CandidateScorer table = [](const Triple&, Side, std::span<double> s) {
    const double v[] = {0.1, 0.8, 0.9, 0.2};
    std::copy(std::begin(v), std::end(v), s.begin());
  };
  expect(rank_triple(table, filter, 4, {0, 0, 1}).tail_rank == 1, "filtered rank");
  expect(rank_triple(table, none, 4, {0, 0, 1}).tail_rank == 2, "raw rank");

  // MRR and Hits arithmetic.
  const std::vector<std::size_t> ranks = {1, 2};
  const auto m = summarize_ranks(ranks);
  expect(near(m.mrr, 0.75) && near(m.hits1, 0.5) && near(m.hits3, 1.0) && near(m.hits10, 1.0), "MRR/Hits of {1,2}");
  const std::vector<std::size_t> ranks2 = {1, 3, 10, 11};
  const auto m2 = summarize_ranks(ranks2);
  expect(near(m2.mrr, (1.0 + 1.0 / 3 + 0.1 + 1.0 / 11) / 4) && near(m2.hits3, 0.5) && near(m2.hits10, 0.75),
         "MRR/Hits of {1,3,10,11}");

  // AP arithmetic: (+, -, +) by descending score gives (1 + 2/3) / 2.
  const std::vector<LabeledScore> ap = {{0, 0.9, true}, {0, 0.5, false}, {0, 0.2, true}};
  expect(near(average_precision(ap), 5.0 / 6.0), "AP (+,-,+)");
  const std::vector<LabeledScore> tied = {{0, 0.5, true}, {0, 0.5, false}};
  expect(near(average_precision(tied), 0.5), "AP ties negatives first");

  // Threshold midpoint and the all-equal case.
  const std::vector<LabeledScore> mid = {{0, 0.5, false}, {0, 0.6, true}};
  expect(near(best_threshold(mid).threshold, 0.55), "threshold midpoint");
  const std::vector<LabeledScore> equal = {{0, 0.3, true}, {0, 0.3, false}};
  expect(near(best_threshold(equal).accuracy, 0.5), "all-equal accuracy");

  // Order invariance under s -> 2s + 1.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u;
  std::vector<LabeledScore> valid, test;
  for (int i = 0; i < 400; ++i) {
    const bool pos = i % 2 == 0;
    valid.push_back({static_cast<RelationId>(i % 4), u(rng) + (pos ? 0.25 : 0.0), pos});
    test.push_back({static_cast<RelationId>(i % 4), u(rng) + (pos ? 0.25 : 0.0), pos});
  }
  auto affine = [](std::vector<LabeledScore> v) {
    for (auto& x : v) x.score = 2.0 * x.score + 1.0;
    return v;
  };
  const auto a = classify(test, tune_thresholds(valid, 4));
  const auto b = classify(affine(test), tune_thresholds(affine(valid), 4));
  expect(a.accuracy == b.accuracy && near(a.map, b.map), "classification invariant under 2s+1");

  std::vector<double> raw(50);
  for (auto& x : raw) x = u(rng);
  std::vector<double> mapped = raw;
  for (auto& x : mapped) x = 2.0 * x + 1.0;
  const std::vector<EntityId> filt = {3, 7};
  bool same = true;
  for (EntityId gold = 0; gold < 50; ++gold) same &= filtered_rank(raw, gold, filt) == filtered_rank(mapped, gold, filt);
  expect(same, "ranks invariant under 2s+1");

  if (!failures.empty()) {
    std::string all;
    for (const auto& f : failures) all += (all.empty() ? "" : ", ") + f;
    return fail("mismatches: " + all);
  }
  return pass("tie rule, filtering, MRR/Hits, AP, thresholds and 2s+1 invariance match hand-derived values");
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "mining oracle equivalence", mining_oracle},
      {2, "worked support/confidence/promotion example", worked_example},
      {3, "truth-value boundedness", truth_bounds},
      {4, "gradient check", gradient_checks},
      {5, "softmax and projection invariants", step_invariants},
      {6, "planted-rule benchmark", planted_rule_benchmark},
      {7, "FB15k-237 mining scale", fb15k237_mining},
      {8, "WN18RR sanity run", wn18rr_sanity},
      {9, "evaluator battery", evaluator_battery},
  };
  return all;
}

int report(const Criterion& c) {
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = fail(fmt::format("exception: {}", e.what()));
  }
  const char* tag = o.code == kPass ? "PASS" : (o.code == kSkip ? "SKIP" : "FAIL");
  fmt::print("criterion {} [{}] {}: {}\n", c.id, tag, c.name, o.detail);
  std::fflush(stdout);
  return o.code;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int id = std::atoi(argv[2]);
    for (const auto& c : criteria())
      if (c.id == id) return report(c);
    fmt::print(stderr, "unknown criterion {}\n", argv[2]);
    return 2;
  }
  if (argc != 1) {
    fmt::print(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  int failed = 0;
  for (const auto& c : criteria()) failed += report(c) == kFail;
  return failed == 0 ? 0 : 1;
}
