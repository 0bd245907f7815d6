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

#include "oracles.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace rulegat::testing {

Fraction Fraction::make(std::uint64_t n, std::uint64_t d) {
  const auto g = std::gcd(n, d);
  return g == 0 ? Fraction{0, 1} : Fraction{n / g, d / g};
}

namespace {

// Adjacency as a dense boolean cube; graphs here are tiny.
class Cube {
 public:
  Cube(std::size_t ne, std::size_t nr, const std::vector<Triple>& triples)
      : ne_(ne), nr_(nr), bits_(ne * nr * ne, false) {
    for (const auto& t : triples) bits_[(t.head * nr_ + t.rel) * ne_ + t.tail] = true;
  }
  bool operator()(std::size_t h, std::size_t r, std::size_t t) const { return bits_[(h * nr_ + r) * ne_ + t]; }

 private:
  std::size_t ne_, nr_;
  std::vector<bool> bits_;
};

}  // namespace

OracleMining brute_force_mine(std::size_t ne, std::size_t nr, const std::vector<Triple>& triples) {
  const Cube g(ne, nr, triples);
  OracleMining out;

  // Samples. Every tuple of distinct entities is visited.
  for (std::uint32_t x = 0; x < ne; ++x) {
    for (std::uint32_t y = 0; y < ne; ++y) {
      if (y == x) continue;
      for (std::uint32_t a = 0; a < nr; ++a) {
        for (std::uint32_t b = a + 1; b < nr; ++b) {
          if (g(x, a, y) && g(x, b, y)) out.inference.insert({x, y, a, b});
          if (g(x, a, y) && g(y, b, x)) out.antisymmetry.insert({x, y, a, b});
        }
      }
      for (std::uint32_t z = 0; z < ne; ++z) {
        if (z == x || z == y) continue;
        for (std::uint32_t r1 = 0; r1 < nr; ++r1)
          for (std::uint32_t r2 = 0; r2 < nr; ++r2)
            for (std::uint32_t r3 = 0; r3 < nr; ++r3) {
              if (r3 == r1 || r3 == r2) continue;
              if (g(x, r1, y) && g(y, r2, z) && g(x, r3, z)) out.transitivity.insert({x, y, z, r1, r2, r3});
            }
      }
    }
  }

  // Frequencies per relation tuple.
  std::map<RuleSignature, std::uint64_t> freq;
  for (const auto& s : out.inference) {
    ++freq[RuleSignature::inference(s[2], s[3])];
    ++freq[RuleSignature::inference(s[3], s[2])];
  }
  for (const auto& s : out.antisymmetry) ++freq[RuleSignature::antisymmetry(s[2], s[3])];
  for (const auto& s : out.transitivity) ++freq[RuleSignature::transitivity(s[3], s[4], s[5])];

  // Entity-level predicates with x bound to the counted entity.
  auto exists_y = [&](std::uint32_t x, auto&& pred) {
    for (std::uint32_t y = 0; y < ne; ++y)
      if (y != x && pred(y)) return true;
    return false;
  };
  auto exists_yz = [&](std::uint32_t x, auto&& pred) {
    for (std::uint32_t y = 0; y < ne; ++y)
      for (std::uint32_t z = 0; z < ne; ++z)
        if (y != x && z != x && z != y && pred(y, z)) return true;
    return false;
  };

  for (const auto& [sig, f] : freq) {
    OracleRule r;
    r.frequency = f;
    r.entities = ne;
    for (std::uint32_t x = 0; x < ne; ++x) {
      bool body = false, head = false, joint = false;
      switch (sig.kind) {
        case RuleKind::Inference:
          body = exists_y(x, [&](auto y) { return g(x, sig.body1, y); });
          head = exists_y(x, [&](auto y) { return g(x, sig.head, y); });
          joint = exists_y(x, [&](auto y) { return g(x, sig.body1, y) && g(x, sig.head, y); });
          break;
        case RuleKind::AntiSymmetry:
          body = exists_y(x, [&](auto y) { return g(x, sig.body1, y); });
          head = exists_y(x, [&](auto y) { return g(y, sig.head, x); });
          joint = exists_y(x, [&](auto y) { return g(x, sig.body1, y) && g(y, sig.head, x); });
          break;
        case RuleKind::Transitivity:
          body = exists_yz(x, [&](auto y, auto z) { return g(x, sig.body1, y) && g(y, sig.body2, z); });
          head = exists_y(x, [&](auto z) { return g(x, sig.head, z); });
          joint = exists_yz(x, [&](auto y, auto z) {
            return g(x, sig.body1, y) && g(y, sig.body2, z) && g(x, sig.head, z);
          });
          break;
      }
      r.body += body;
      r.head += head;
      r.joint += joint;
    }
    r.defined = r.entities > 0 && r.body > 0 && r.head > 0;
    if (r.defined) {
      r.support = Fraction::make(r.joint, r.entities);
      r.confidence = Fraction::make(r.joint, r.body);
      r.promotion = Fraction::make(r.joint * r.entities, r.body * r.head);
    }
    out.rules[sig] = r;
  }
  return out;
}

RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_entities, std::size_t max_relations,
                         std::size_t max_triples) {
  RandomGraph g;
  g.num_entities = std::uniform_int_distribution<std::size_t>(2, max_entities)(rng);
  g.num_relations = std::uniform_int_distribution<std::size_t>(1, max_relations)(rng);
  const auto want = std::uniform_int_distribution<std::size_t>(1, max_triples)(rng);
  std::uniform_int_distribution<EntityId> ent(0, static_cast<EntityId>(g.num_entities - 1));
  std::uniform_int_distribution<RelationId> rel(0, static_cast<RelationId>(g.num_relations - 1));
  std::set<Triple> seen;
  // Bounded attempts: small graphs may not hold `want` distinct triples.
  for (std::size_t attempt = 0; attempt < 20 * want && seen.size() < want; ++attempt) {
    seen.insert({ent(rng), rel(rng), ent(rng)});
  }
  g.triples.assign(seen.begin(), seen.end());
  std::shuffle(g.triples.begin(), g.triples.end(), rng);
  return g;
}

TripleStore make_store(std::size_t ne, std::size_t nr, const std::vector<Triple>& train,
                       const std::vector<Triple>& valid, const std::vector<Triple>& test) {
  TripleStore s;
  for (std::size_t e = 0; e < ne; ++e) s.intern_entity(fmt::format("e{}", e));
  for (std::size_t r = 0; r < nr; ++r) s.intern_relation(fmt::format("r{}", r));
  for (const auto& t : train) s.add(Split::Train, t);
  for (const auto& t : valid) s.add(Split::Valid, t);
  for (const auto& t : test) s.add(Split::Test, t);
  return s;
}

TripleStore toy_store() {
  return make_store(5, 2,
                    {{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {3, 0, 4}, {0, 1, 2}, {1, 1, 3}, {2, 1, 4}, {4, 1, 0}});
}

PlantedGraph planted_rule_graph(std::uint64_t seed, std::size_t ne, double out_degree, std::size_t noise_relations,
                                double withheld) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<EntityId> ent(0, static_cast<EntityId>(ne - 1));
  const std::size_t nr = 2 + noise_relations;
  const RelationId rs = 0;
  const RelationId rt = 1;

  auto random_edges = [&](RelationId r, double degree) {
    std::set<Triple> edges;
    const auto want = static_cast<std::size_t>(degree * static_cast<double>(ne));
    while (edges.size() < want) {
      const auto h = ent(rng);
      const auto t = ent(rng);
      if (h != t) edges.insert({h, r, t});
    }
    return std::vector<Triple>(edges.begin(), edges.end());
  };

  std::vector<Triple> train = random_edges(rs, out_degree);
  std::vector<Triple> twins;
  for (const auto& t : train) twins.push_back({t.head, rt, t.tail});
  std::shuffle(twins.begin(), twins.end(), rng);
  const auto n_test = static_cast<std::size_t>(withheld * static_cast<double>(twins.size()));
  std::vector<Triple> test(twins.begin(), twins.begin() + static_cast<std::ptrdiff_t>(n_test));
  train.insert(train.end(), twins.begin() + static_cast<std::ptrdiff_t>(n_test), twins.end());
  for (std::size_t k = 0; k < noise_relations; ++k) {
    const auto noise = random_edges(static_cast<RelationId>(2 + k), 1.0);
    train.insert(train.end(), noise.begin(), noise.end());
  }
  return {make_store(ne, nr, train, {}, test), rs, rt};
}

}  // namespace rulegat::testing
