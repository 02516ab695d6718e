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

#include "cardex/textfix.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/locale/encoding_utf.hpp>

#include "cardex/error.hpp"

namespace cardex::textfix {

Lexicon::Lexicon(std::string name, std::vector<std::string> entries, double threshold)
    : name_(std::move(name)), entries_(std::move(entries)), threshold_(threshold) {
  if (!(threshold_ >= 0 && threshold_ <= 1)) throw ConfigError("lexicon threshold must be in [0, 1]");
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.empty()) throw ConfigError("lexicon '" + name_ + "' has an empty entry");
    if (!seen.insert(e).second) throw ConfigError("lexicon '" + name_ + "' has duplicate entry '" + e + "'");
  }
}

namespace {

std::vector<std::string> keys_of(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (const auto& [surface, code] : pairs) out.push_back(surface);
  return out;
}

}  // namespace

MappedLexicon::MappedLexicon(std::string name, std::vector<std::pair<std::string, std::string>> surface_to_code,
                             double threshold)
    : surfaces_(std::move(name), keys_of(surface_to_code), threshold),
      codes_(surface_to_code.begin(), surface_to_code.end()) {
  for (const auto& [surface, code] : codes_)
    if (code.empty()) throw ConfigError("mapped lexicon entry '" + surface + "' has an empty code");
}

std::u32string to_code_points(std::string_view utf8) {
  return boost::locale::conv::utf_to_utf<char32_t>(utf8.data(), utf8.data() + utf8.size());
}

std::string to_utf8(std::u32string_view cps) {
  return boost::locale::conv::utf_to_utf<char>(cps.data(), cps.data() + cps.size());
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Two-row DP over the shorter string.
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(to_code_points(a), to_code_points(b));
}

namespace {

double similarity_cp(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = std::max(a.size(), b.size());
  if (n == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(n);
}

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' || c == U'\u00A0' ||
         c == U'\u3000';
}

}  // namespace

double similarity(std::string_view a, std::string_view b) {
  return similarity_cp(to_code_points(a), to_code_points(b));
}

std::string normalize_whitespace(std::string_view s) {
  const std::u32string cps = to_code_points(s);
  std::u32string out;
  bool pending_space = false;
  for (char32_t c : cps) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return to_utf8(out);
}

CorrectionOutcome correct_token(std::string_view raw, const Lexicon& lex) {
  if (lex.entries().empty()) throw ConfigError("lexicon '" + lex.name() + "' is empty");
  const std::string norm = normalize_whitespace(raw);
  const std::u32string q = to_code_points(norm);

  struct Scored {
    const std::string* entry;
    double sim;
    std::size_t dist;
  };
  std::vector<Scored> scored;
  scored.reserve(lex.entries().size());
  for (const auto& e : lex.entries()) {
    const std::u32string cps = to_code_points(e);
    scored.push_back({&e, similarity_cp(q, cps), levenshtein(q, cps)});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    if (a.dist != b.dist) return a.dist < b.dist;
    return *a.entry < *b.entry;
  });

  CorrectionOutcome out;
  out.similarity = scored.front().sim;
  out.applied = !norm.empty() && out.similarity >= lex.threshold();
  out.value = out.applied ? *scored.front().entry : norm;
  for (std::size_t i = 0; i < scored.size() && i < 5; ++i)
    out.candidate_rank.emplace_back(*scored[i].entry, scored[i].sim);
  return out;
}

CorrectionOutcome standardize_gender(std::string_view raw, const MappedLexicon& mapping) {
  CorrectionOutcome out = correct_token(raw, mapping.surfaces());
  if (out.applied) out.value = mapping.code_for(out.value);
  return out;
}

std::string apply_substitutions(std::string_view raw, const SubstitutionTable& table) {
  std::string cur(raw);
  for (const auto& rule : table.rules) {
    if (rule.from.empty()) continue;
    std::string next;
    std::size_t pos = 0;
    while (true) {
      const std::size_t hit = cur.find(rule.from, pos);
      if (hit == std::string::npos) break;
      next.append(cur, pos, hit - pos);
      next += rule.to;
      pos = hit + rule.from.size();
    }
    next.append(cur, pos, std::string::npos);
    cur = std::move(next);
  }
  return cur;
}

std::string normalize_date(std::string_view raw) {
  const std::u32string cps = to_code_points(raw);
  std::vector<std::string> parts(1);
  for (char32_t c : cps) {
    if (c >= U'\u0966' && c <= U'\u096F') c = U'0' + (c - U'\u0966');
    if (c >= U'0' && c <= U'9') {
      parts.back().push_back(static_cast<char>(c));
    } else if (c == U'/' || c == U'-' || c == U'.' || is_space(c)) {
      if (!parts.back().empty()) parts.emplace_back();
    } else {
      throw DateError(std::string(raw));
    }
  }
  if (parts.back().empty()) parts.pop_back();
  if (parts.size() != 3) throw DateError(std::string(raw));
  const std::string& y = parts[0];
  const std::string& m = parts[1];
  const std::string& d = parts[2];
  if (y.size() != 4 || m.empty() || m.size() > 2 || d.empty() || d.size() > 2) throw DateError(std::string(raw));
  const int month = std::stoi(m);
  const int day = std::stoi(d);
  if (month < 1 || month > 12 || day < 1 || day > 32) throw DateError(std::string(raw));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%s-%02d-%02d", y.c_str(), month, day);
  return buf;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Non-comment, non-blank lines with the trailing CR removed.
std::vector<std::string> data_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = normalize_whitespace(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return out;
}

}  // namespace

Lexicon parse_lexicon(std::string name, std::string_view text, double threshold) {
  std::vector<std::string> entries;
  for (const auto& line : data_lines(text)) entries.push_back(normalize_whitespace(line));
  return Lexicon(std::move(name), std::move(entries), threshold);
}

Lexicon load_lexicon(const std::filesystem::path& path, double threshold) {
  return parse_lexicon(path.stem().string(), slurp(path), threshold);
}

MappedLexicon parse_mapped_lexicon(std::string name, std::string_view text, double threshold) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& line : data_lines(text)) {
    const auto cols = split_tabs(line);
    if (cols.size() != 2) throw ConfigError("mapped lexicon line needs 'surface<TAB>code': " + line);
    pairs.emplace_back(normalize_whitespace(cols[0]), normalize_whitespace(cols[1]));
  }
  return MappedLexicon(std::move(name), std::move(pairs), threshold);
}

MappedLexicon load_mapped_lexicon(const std::filesystem::path& path, double threshold) {
  return parse_mapped_lexicon(path.stem().string(), slurp(path), threshold);
}

std::vector<SubstitutionTable> parse_substitutions(std::string_view text) {
  std::vector<SubstitutionTable> tables;
  for (const auto& line : data_lines(text)) {
    const auto cols = split_tabs(line);
    if (cols.size() < 2 || cols.size() > 3)
      throw ConfigError("substitution line needs 'from<TAB>to[<TAB>scope]': " + line);
    if (cols[0].empty()) throw ConfigError("substitution 'from' must be non-empty");
    const std::string scope = cols.size() == 3 && !cols[2].empty() ? cols[2] : "all";
    auto it = std::find_if(tables.begin(), tables.end(), [&](const auto& t) { return t.scope == scope; });
    if (it == tables.end()) {
      tables.push_back({{}, scope});
      it = std::prev(tables.end());
    }
    it->rules.push_back({cols[0], cols[1]});
  }
  return tables;
}

std::vector<SubstitutionTable> load_substitutions(const std::filesystem::path& path) {
  return parse_substitutions(slurp(path));
}

}  // namespace cardex::textfix
