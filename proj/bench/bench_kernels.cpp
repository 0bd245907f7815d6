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

// Parallel kernels against their serial references: rule mining, the
// encoder forward pass and filtered ranking.

#include <numbers>
#include <random>
#include <set>

#include <benchmark/benchmark.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include "rulegat/encoder/encoder.hpp"
#include "rulegat/encoder/ops.hpp"
#include "rulegat/eval/ranking.hpp"
#include "rulegat/rules/miner.hpp"
#include "rulegat/train/model.hpp"

using namespace rulegat;

namespace {

// Random graph with a planted inference rule between relations 0 and 1.
TripleStore synthetic(std::size_t ne, std::size_t nr, double degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<EntityId> ent(0, static_cast<EntityId>(ne - 1));
  std::uniform_int_distribution<RelationId> rel(0, static_cast<RelationId>(nr - 1));
  TripleStore s;
  for (std::size_t e = 0; e < ne; ++e) s.intern_entity("e" + std::to_string(e));
  for (std::size_t r = 0; r < nr; ++r) s.intern_relation("r" + std::to_string(r));
  const auto want = static_cast<std::size_t>(degree * static_cast<double>(ne));
  for (std::size_t i = 0; i < want; ++i) {
    const Triple t{ent(rng), rel(rng), ent(rng)};
    if (t.head == t.tail) continue;
    s.add(Split::Train, t);
    if (t.rel == 0 && i % 3 != 0) s.add(Split::Train, {t.head, 1, t.tail});
    if (i % 20 == 0) s.add(Split::Test, {ent(rng), rel(rng), ent(rng)});
  }
  return s;
}

struct Setup {
  TripleStore store;
  NeighborhoodIndex index;
  LogicWeightTable logic;
  EdgeGraph graph;
  EncoderParams params;
  EmbeddingState emb;

  explicit Setup(std::size_t ne) : store(synthetic(ne, 12, 4.0, 7)) {
    index = build_index(store);
    const auto rules = filter_rules(mine_candidates(index), 1.0);
    logic = LogicWeightTable::build(rules, index, std::numbers::e);
    graph = EdgeGraph(index, logic, 2, 8);
    std::mt19937_64 rng(1);
    params = init_params(64, 2, 0.2, rng);
    emb = init_embeddings(store.num_entities(), store.num_relations(), 64, rng);
  }
};

const Setup& setup() {
  static const Setup s(4000);
  return s;
}

void threads_from(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_MineParallel(benchmark::State& state) {
  threads_from(state);
  for (auto _ : state) benchmark::DoNotOptimize(mine_candidates(setup().index));
}
void BM_MineReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mine_candidates_reference(setup().index));
}

void BM_EncodeParallel(benchmark::State& state) {
  threads_from(state);
  const Encoder enc(setup().graph);
  EncoderTape tape;
  for (auto _ : state) {
    enc.forward(setup().params, setup().emb, {}, {}, nullptr, tape);
    benchmark::DoNotOptimize(tape.entity_out.data());
  }
}
void BM_EncodeReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(encode_reference(setup().params, setup().graph, setup().emb));
}

void BM_RankParallel(benchmark::State& state) {
  threads_from(state);
  const FilterIndex filter(setup().store);
  const auto scorer = truth_scorer(setup().emb);
  for (auto _ : state)
    benchmark::DoNotOptimize(rank_all(scorer, filter, setup().store.num_entities(), setup().store.test()));
}
void BM_RankReference(benchmark::State& state) {
  const FilterIndex filter(setup().store);
  const auto scorer = truth_scorer(setup().emb);
  for (auto _ : state)
    benchmark::DoNotOptimize(rank_all_reference(scorer, filter, setup().store.num_entities(), setup().store.test()));
}

void thread_counts(benchmark::internal::Benchmark* b) {
  for (int t = 1; t <= omp_get_num_procs(); t *= 2) b->Arg(t);
}

}  // namespace

BENCHMARK(BM_MineParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MineReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EncodeParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EncodeReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RankReference)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
