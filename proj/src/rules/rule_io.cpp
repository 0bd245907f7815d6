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

#include <charconv>
#include <fstream>

#include <fmt/format.h>
#include <fmt/os.h>

#include "rulegat/rules/miner.hpp"

namespace rulegat {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_double(std::string_view s, const std::string& file, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(file, line, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

RelationId relation_id(const TripleStore& store, std::string_view name, const std::string& file,
                       std::size_t line) {
  auto id = store.relations().find(name);
  if (!id) throw ParseError(file, line, "unknown relation '" + std::string(name) + "'");
  return *id;
}

EntityId entity_id(const TripleStore& store, std::string_view name, const std::string& file,
                   std::size_t line) {
  auto id = store.entities().find(name);
  if (!id) throw ParseError(file, line, "unknown entity '" + std::string(name) + "'");
  return *id;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(std::string_view(line), line_no);
  }
}

}  // namespace

void write_rules(const std::filesystem::path& path, const RuleSet& rules,
                 const TripleStore& store) {
  auto out = fmt::output_file(path.string());
  const auto& rel = store.relations();
  for (const auto& r : rules.rules) {
    const auto& s = r.signature;
    std::string body = rel.name(s.body1);
    if (s.body2 != kNoRelation) body += "," + rel.name(s.body2);
    out.print("{}\t{}\t{}\t{:.17g}\t{:.17g}\t{:.17g}\n", rule_kind_name(s.kind), body,
              rel.name(s.head), r.support, r.confidence, r.promotion);
  }
}

RuleSet read_rules(const std::filesystem::path& path, const TripleStore& store,
                   double threshold) {
  RuleSet set;
  set.threshold = threshold;
  const std::string file = path.string();
  for_each_line(path, [&](std::string_view line, std::size_t n) {
    const auto f = split(line, '\t');
    if (f.size() != 6) throw ParseError(file, n, "expected 6 tab-separated fields");
    auto kind = parse_rule_kind(f[0]);
    if (!kind) throw ParseError(file, n, "unknown rule kind '" + std::string(f[0]) + "'");

    const auto body = split(f[1], ',');
    const std::size_t expected = *kind == RuleKind::Transitivity ? 2 : 1;
    if (body.size() != expected) throw ParseError(file, n, "wrong number of body relations");

    RuleCandidate c;
    c.signature.kind = *kind;
    c.signature.body1 = relation_id(store, body[0], file, n);
    if (expected == 2) c.signature.body2 = relation_id(store, body[1], file, n);
    c.signature.head = relation_id(store, f[2], file, n);
    if (*kind == RuleKind::AntiSymmetry) {
      c.signature = RuleSignature::antisymmetry(c.signature.body1, c.signature.head);
    }
    c.support = parse_double(f[3], file, n);
    c.confidence = parse_double(f[4], file, n);
    c.promotion = parse_double(f[5], file, n);
    c.scored = true;
    if (c.promotion >= threshold) set.rules.push_back(std::move(c));
  });
  return set;
}

void write_ground_rules(const std::filesystem::path& path, const GroundRules& rules,
                        const TripleStore& store) {
  auto out = fmt::output_file(path.string());
  const auto& ent = store.entities();
  const auto& rel = store.relations();
  for (const auto& g : rules) {
    out.print("{}", rule_kind_name(g.kind));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& t = g.triples[i];
      out.print("\t{}\t{}\t{}", ent.name(t.head), rel.name(t.rel), ent.name(t.tail));
    }
    out.print("\n");
  }
}

GroundRules read_ground_rules(const std::filesystem::path& path, const TripleStore& store) {
  GroundRules rules;
  const std::string file = path.string();
  for_each_line(path, [&](std::string_view line, std::size_t n) {
    const auto f = split(line, '\t');
    auto kind = parse_rule_kind(f[0]);
    if (!kind) throw ParseError(file, n, "unknown rule kind '" + std::string(f[0]) + "'");
    GroundRule g;
    g.kind = *kind;
    if (f.size() != 1 + 3 * g.size()) throw ParseError(file, n, "wrong number of fields");
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.triples[i] = Triple{entity_id(store, f[1 + 3 * i], file, n),
                            relation_id(store, f[2 + 3 * i], file, n),
                            entity_id(store, f[3 + 3 * i], file, n)};
    }
    rules.push_back(g);
  });
  return rules;
}

}  // namespace rulegat
