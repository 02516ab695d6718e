/* Copyright 2026 The Cardex Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cardex/annotation_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cardex/error.hpp"

namespace cardex::annotation_io {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<LabelEntry> parse_impl(std::string_view text, const CategorySchema* schema) {
  std::vector<LabelEntry> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 5)
      throw ParseError(line_no, "expected 5 fields 'cat cx cy w h', got " + std::to_string(tokens.size()));
    LabelEntry e;
    if (!parse_number(tokens[0], e.category)) throw ParseError(line_no, "category is not an integer");
    double v[4];
    for (int k = 0; k < 4; ++k) {
      if (!parse_number(tokens[k + 1], v[k]) || !std::isfinite(v[k]))
        throw ParseError(line_no, "coordinate '" + std::string(tokens[k + 1]) + "' is not a number");
    }
    e.box = NormBox{v[0], v[1], v[2], v[3]};
    if (e.category < 0 || (schema && !schema->contains(e.category)))
      throw ParseError(line_no, "category " + std::to_string(e.category) + " out of range");
    if (!e.box.valid()) throw ParseError(line_no, "box coordinates out of range");
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<LabelEntry> parse_yolo_label(std::string_view text, const CategorySchema& schema) {
  return parse_impl(text, &schema);
}

std::vector<LabelEntry> parse_yolo_label(std::string_view text) { return parse_impl(text, nullptr); }

std::string serialize_yolo_label(const std::vector<LabelEntry>& entries) {
  std::string out;
  char buf[160];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::snprintf(buf, sizeof buf, "%d %.6f %.6f %.6f %.6f", e.category, e.box.cx, e.box.cy, e.box.w,
                  e.box.h);
    if (i) out += '\n';
    out += buf;
  }
  return out;
}

DatasetConfig parse_dataset_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("dataset config is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("dataset config must be a mapping");
  DatasetConfig cfg;
  for (const char* key : {"train", "val", "names"}) {
    if (!root[key]) throw ConfigError(std::string("dataset config is missing '") + key + "'");
  }
  try {
    cfg.train_path = root["train"].as<std::string>();
    cfg.val_path = root["val"].as<std::string>();
    const YAML::Node names = root["names"];
    if (names.IsSequence()) {
      for (const auto& n : names) cfg.names.push_back(n.as<std::string>());
    } else if (names.IsMap()) {
      std::map<int, std::string> by_index;
      for (const auto& kv : names) by_index[kv.first.as<int>()] = kv.second.as<std::string>();
      int expect = 0;
      for (const auto& [idx, name] : by_index) {
        if (idx != expect++) throw ConfigError("names map must use contiguous indices from 0");
        cfg.names.push_back(name);
      }
    } else {
      throw ConfigError("'names' must be a list");
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("dataset config: ") + e.what());
  }
  if (cfg.names.empty()) throw ConfigError("'names' must not be empty");
  std::set<std::string> seen;
  for (const auto& n : cfg.names) {
    if (n.empty()) throw ConfigError("category names must be non-empty");
    if (!seen.insert(n).second) throw ConfigError("duplicate category name '" + n + "'");
  }
  return cfg;
}

std::string serialize_dataset_config(const DatasetConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "train" << YAML::Value << cfg.train_path;
  out << YAML::Key << "val" << YAML::Value << cfg.val_path;
  out << YAML::Key << "nc" << YAML::Value << cfg.names.size();
  out << YAML::Key << "names" << YAML::Value << YAML::BeginSeq;
  for (const auto& n : cfg.names) out << n;
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

SplitResult split_dataset(std::vector<DatasetItem> items, const SplitSpec& spec) {
  if (items.empty()) throw InvalidParameter("split_dataset: no items");
  if (!(spec.train_ratio > 0 && spec.train_ratio < 1))
    throw InvalidParameter("split_dataset: train_ratio must be in (0, 1)");

  std::sort(items.begin(), items.end(), [](const DatasetItem& a, const DatasetItem& b) {
    return std::tie(a.stratum, a.image_path) < std::tie(b.stratum, b.image_path);
  });
  std::map<std::string, std::vector<DatasetItem>> strata;
  for (auto& it : items) strata[it.stratum].push_back(std::move(it));

  SplitResult result;
  std::mt19937_64 rng(spec.seed);

  // Train quota per eligible stratum: floor(ratio * n) plus largest-remainder
  // top-up so the total equals round(ratio * N).
  struct Quota {
    std::string stratum;
    std::size_t take;
    double frac;
  };
  std::vector<Quota> quotas;
  double exact_total = 0;
  std::size_t floor_total = 0;
  for (const auto& [name, group] : strata) {
    if (group.size() < 2) continue;
    const double exact = spec.train_ratio * static_cast<double>(group.size());
    const auto fl = static_cast<std::size_t>(std::floor(exact));
    quotas.push_back({name, fl, exact - static_cast<double>(fl)});
    exact_total += exact;
    floor_total += fl;
  }
  const auto target = static_cast<std::size_t>(std::llround(exact_total));
  std::vector<std::size_t> order(quotas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return quotas[a].frac > quotas[b].frac; });
  for (std::size_t k = 0; k < target - floor_total && k < order.size(); ++k) ++quotas[order[k]].take;
  std::map<std::string, std::size_t> take;
  for (const auto& q : quotas) take[q.stratum] = q.take;

  for (auto& [name, group] : strata) {
    if (group.size() < 2) {
      result.warnings.push_back("stratum '" + name + "' has fewer than 2 items; placed in train");
      for (auto& it : group) result.train.push_back(std::move(it));
      continue;
    }
    // Fisher-Yates with an explicit index rule so the permutation does not
    // depend on the standard library's distribution implementation.
    for (std::size_t i = group.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(group[i], group[j]);
    }
    const std::size_t k = take[name];
    for (std::size_t i = 0; i < group.size(); ++i)
      (i < k ? result.train : result.val).push_back(std::move(group[i]));
  }
  return result;
}

}  // namespace cardex::annotation_io
