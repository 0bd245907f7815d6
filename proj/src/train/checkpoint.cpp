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

#include "rulegat/train/checkpoint.hpp"

#include <array>
#include <bit>
#include <fstream>

#include <fmt/format.h>

namespace rulegat {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'G', 'A', 'T', 'C', 'K', 'P', 'T'};

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw IoError(fmt::format("cannot open {} for writing", path.string()));
  }
  template <typename T>
  void pod(const T& v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void str(const std::string& s) {
    pod<std::uint64_t>(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  template <typename M>
  void matrix(const M& m) {
    pod<std::uint64_t>(static_cast<std::uint64_t>(m.rows()));
    pod<std::uint64_t>(static_cast<std::uint64_t>(m.cols()));
    out_.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(double)));
  }
  void finish(const std::filesystem::path& path) {
    out_.flush();
    if (!out_) throw IoError(fmt::format("write failed: {}", path.string()));
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path) {
    if (!in_) throw IoError(fmt::format("cannot open checkpoint {}", path.string()));
  }
  template <typename T>
  T pod() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) throw DataError(fmt::format("{}: truncated checkpoint", path_.string()));
    return v;
  }
  std::string str() {
    const auto n = pod<std::uint64_t>();
    if (n > (1u << 24)) throw DataError(fmt::format("{}: corrupt string length", path_.string()));
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (!in_) throw DataError(fmt::format("{}: truncated checkpoint", path_.string()));
    return s;
  }
  Matrix matrix() {
    const auto rows = pod<std::uint64_t>();
    const auto cols = pod<std::uint64_t>();
    if (rows > (1u << 28) || cols > (1u << 16)) throw DataError(fmt::format("{}: corrupt matrix shape", path_.string()));
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    in_.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!in_) throw DataError(fmt::format("{}: truncated checkpoint", path_.string()));
    return m;
  }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  Writer w(path);
  for (char c : kMagic) w.pod(c);
  w.pod(Checkpoint::kVersion);
  w.pod(ck.vocab_hash);
  w.pod<std::int32_t>(ck.best_epoch);

  w.pod<std::uint64_t>(ck.config.size());
  for (const auto& [k, v] : ck.config) {
    w.str(k);
    w.str(v);
  }

  const auto& p = ck.model.params;
  w.pod<std::int32_t>(p.depth);
  w.pod(p.slope);
  w.matrix(ck.model.emb.entity);
  w.matrix(ck.model.emb.relation);
  w.matrix(p.w1);
  w.matrix(p.w2);
  w.matrix(p.we);
  w.matrix(p.wr);

  w.pod(ck.rules.threshold);
  w.pod<std::uint64_t>(ck.rules.rules.size());
  for (const auto& r : ck.rules.rules) {
    w.pod<std::uint8_t>(static_cast<std::uint8_t>(r.signature.kind));
    w.pod(r.signature.body1);
    w.pod(r.signature.body2);
    w.pod(r.signature.head);
    w.pod(r.support);
    w.pod(r.confidence);
    w.pod(r.promotion);
  }
  w.finish(path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  for (char c : kMagic) {
    if (r.pod<char>() != c) throw DataError(fmt::format("{}: not a rulegat checkpoint", path.string()));
  }
  const auto version = r.pod<std::uint32_t>();
  if (version != Checkpoint::kVersion)
    throw DataError(fmt::format("{}: unsupported checkpoint version {}", path.string(), version));

  Checkpoint ck;
  ck.vocab_hash = r.pod<std::uint64_t>();
  ck.best_epoch = r.pod<std::int32_t>();
  const auto n_config = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < n_config; ++i) {
    auto k = r.str();
    ck.config[k] = r.str();
  }

  auto& p = ck.model.params;
  p.depth = r.pod<std::int32_t>();
  p.slope = r.pod<double>();
  ck.model.emb.entity = r.matrix();
  ck.model.emb.relation = r.matrix();
  p.w1 = r.matrix();
  const Matrix w2 = r.matrix();
  p.w2 = Eigen::Map<const Vector>(w2.data(), w2.size());
  p.we = r.matrix();
  p.wr = r.matrix();
  const auto d = p.we.rows();
  if (p.w1.rows() != d || p.w1.cols() != 3 * d || p.w2.size() != d || p.wr.rows() != d ||
      ck.model.emb.entity.cols() != d || ck.model.emb.relation.cols() != d)
    throw DataError(fmt::format("{}: inconsistent parameter shapes", path.string()));

  ck.rules.threshold = r.pod<double>();
  const auto n_rules = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < n_rules; ++i) {
    RuleCandidate c;
    const auto kind = r.pod<std::uint8_t>();
    if (kind > static_cast<std::uint8_t>(RuleKind::Transitivity))
      throw DataError(fmt::format("{}: corrupt rule kind", path.string()));
    c.signature.kind = static_cast<RuleKind>(kind);
    c.signature.body1 = r.pod<RelationId>();
    c.signature.body2 = r.pod<RelationId>();
    c.signature.head = r.pod<RelationId>();
    c.support = r.pod<double>();
    c.confidence = r.pod<double>();
    c.promotion = r.pod<double>();
    c.scored = true;
    ck.rules.rules.push_back(c);
  }
  return ck;
}

}  // namespace rulegat
