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

#include "rulegat/eval/report.hpp"

#include <fmt/format.h>

namespace rulegat {

namespace {

std::string rel_name(const Vocabulary& v, std::size_t r) {
  return r < v.size() ? v.name(static_cast<std::uint32_t>(r)) : fmt::format("#{}", r);
}

}  // namespace

std::string format_table(const EvalReport& rep, const Vocabulary& relations) {
  std::string out;
  if (rep.link) {
    const auto& m = *rep.link;
    out += fmt::format("link prediction ({}, filtered, {} ranks)\n", rep.split, m.count);
    out += fmt::format("  {:<8} {:>8}\n", "MRR", fmt::format("{:.4f}", m.mrr));
    out += fmt::format("  {:<8} {:>8}\n", "Hits@1", fmt::format("{:.4f}", m.hits1));
    out += fmt::format("  {:<8} {:>8}\n", "Hits@3", fmt::format("{:.4f}", m.hits3));
    out += fmt::format("  {:<8} {:>8}\n", "Hits@10", fmt::format("{:.4f}", m.hits10));
  }
  if (rep.classification) {
    const auto& c = *rep.classification;
    out += fmt::format("triplet classification ({}, {} triples)\n", rep.split, c.count);
    out += fmt::format("  accuracy {:.4f}   MAP {:.4f} over {} relations\n", c.accuracy, c.map, c.relations_in_map);
    out += fmt::format("  {:<32} {:>6} {:>9} {:>8} {:>10}\n", "relation", "n", "accuracy", "AP", "threshold");
    for (std::size_t r = 0; r < c.relations.size(); ++r) {
      const auto& rc = c.relations[r];
      if (rc.count == 0) continue;
      out += fmt::format("  {:<32} {:>6} {:>9.4f} {:>8.4f} {:>10.6f}{}\n", rel_name(relations, r), rc.count,
                         rc.accuracy, rc.average_precision, rc.threshold, rc.inherited ? " (global)" : "");
    }
  }
  return out;
}

std::string format_machine(const EvalReport& rep, const Vocabulary& relations) {
  std::string out;
  auto line = [&](std::string_view metric, double v) { out += fmt::format("{}\t{}\t{:.17g}\n", metric, rep.split, v); };
  if (rep.link) {
    const auto& m = *rep.link;
    line("mrr", m.mrr);
    line("hits@1", m.hits1);
    line("hits@3", m.hits3);
    line("hits@10", m.hits10);
    line("ranks", static_cast<double>(m.count));
  }
  if (rep.classification) {
    const auto& c = *rep.classification;
    line("accuracy", c.accuracy);
    line("map", c.map);
    line("classified", static_cast<double>(c.count));
    for (std::size_t r = 0; r < c.relations.size(); ++r) {
      const auto& rc = c.relations[r];
      if (rc.count == 0) continue;
      const auto name = rel_name(relations, r);
      line(fmt::format("accuracy@{}", name), rc.accuracy);
      line(fmt::format("ap@{}", name), rc.average_precision);
      line(fmt::format("threshold@{}", name), rc.threshold);
      if (rc.inherited) line(fmt::format("threshold_inherited@{}", name), 1.0);
    }
  }
  return out;
}

}  // namespace rulegat
