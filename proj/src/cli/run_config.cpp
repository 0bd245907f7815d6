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

#include "rulegat/cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "rulegat/common.hpp"

namespace rulegat {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_int(const std::string& key, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(fmt::format("{}: cannot parse '{}'", key, text));
  return v;
}

}  // namespace

ConfigValues parse_config_text(std::string_view text, std::string_view origin) {
  ConfigValues out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", origin, line_no));
    out[std::string(key)] = std::string(value);
  }
  return out;
}

ConfigValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

void RunConfig::apply(const ConfigValues& values) {
  ConfigValues rest;
  for (const auto& [k, v] : values) {
    if (k == "data.dir") dataset_dir = v;
    else if (k == "out.dir") out_dir = v;
    else if (k == "run.threads") threads = parse_int<int>(k, v);
    else if (k == "eval.seed") eval_seed = parse_int<std::uint64_t>(k, v);
    else if (k == "gradcheck.samples") gradcheck_samples = parse_int<std::size_t>(k, v);
    else rest[k] = v;
  }
  train.apply(rest);
}

void RunConfig::validate() const {
  if (threads < 0) throw ConfigError("run.threads must be >= 0");
  if (gradcheck_samples == 0) throw ConfigError("gradcheck.samples must be > 0");
  if (out_dir.empty()) throw ConfigError("out.dir must not be empty");
  train.validate();
}

ConfigValues RunConfig::snapshot() const {
  auto m = train.to_map();
  m["data.dir"] = dataset_dir.string();
  m["out.dir"] = out_dir.string();
  m["run.threads"] = fmt::format("{}", threads);
  m["eval.seed"] = fmt::format("{}", eval_seed);
  m["gradcheck.samples"] = fmt::format("{}", gradcheck_samples);
  return m;
}

RunConfig resolve_config(const ConfigValues& file_values, const ConfigValues& flag_values) {
  RunConfig c;
  c.apply(file_values);
  c.apply(flag_values);
  c.validate();
  return c;
}

}  // namespace rulegat
