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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// OCR post-processing: edit distance, lexicon correction, character
// substitution and date normalization. Strings are UTF-8; edit operations
// count Unicode scalar values.
namespace cardex::textfix {

inline constexpr double kDefaultThreshold = 0.7;

class Lexicon {
 public:
  Lexicon(std::string name, std::vector<std::string> entries, double threshold = kDefaultThreshold);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& entries() const noexcept { return entries_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::string name_;
  std::vector<std::string> entries_;
  double threshold_;
};

// Surface forms (e.g. the Devanagari words for male/female) mapped to
// canonical codes.
class MappedLexicon {
 public:
  MappedLexicon(std::string name, std::vector<std::pair<std::string, std::string>> surface_to_code,
                double threshold = kDefaultThreshold);

  const Lexicon& surfaces() const noexcept { return surfaces_; }
  const std::string& code_for(const std::string& surface) const { return codes_.at(surface); }

 private:
  Lexicon surfaces_;
  std::map<std::string, std::string> codes_;
};

struct SubstitutionRule {
  std::string from;
  std::string to;
};

struct SubstitutionTable {
  std::vector<SubstitutionRule> rules;
  std::string scope = "all";  // category name or "all"
};

struct CorrectionOutcome {
  std::string value;
  bool applied = false;
  double similarity = 0;
  std::vector<std::pair<std::string, double>> candidate_rank;  // best first, at most 5
};

std::u32string to_code_points(std::string_view utf8);
std::string to_utf8(std::u32string_view code_points);

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - levenshtein / max(len); two empty strings are identical.
double similarity(std::string_view a, std::string_view b);

// Trims and collapses internal whitespace runs to one ASCII space.
std::string normalize_whitespace(std::string_view s);

// Best entry by similarity, ties by lower distance then by entry order
// (lexicographic). Throws ConfigError on an empty lexicon.
CorrectionOutcome correct_token(std::string_view raw, const Lexicon& lex);
CorrectionOutcome standardize_gender(std::string_view raw, const MappedLexicon& mapping);

std::string apply_substitutions(std::string_view raw, const SubstitutionTable& table);

// Devanagari digits to ASCII, separators unified, validated as YYYY-MM-DD
// (month 1-12, day 1-32). Throws DateError.
std::string normalize_date(std::string_view raw);

// --- data files ---

// One entry per line; '#' comments and blank lines skipped.
Lexicon load_lexicon(const std::filesystem::path& path, double threshold = kDefaultThreshold);
Lexicon parse_lexicon(std::string name, std::string_view text, double threshold = kDefaultThreshold);
// "surface<TAB>code" per line.
MappedLexicon load_mapped_lexicon(const std::filesystem::path& path, double threshold = kDefaultThreshold);
MappedLexicon parse_mapped_lexicon(std::string name, std::string_view text,
                                   double threshold = kDefaultThreshold);
// "from<TAB>to[<TAB>scope]" per line; one table per scope, in first-seen order.
std::vector<SubstitutionTable> parse_substitutions(std::string_view text);
std::vector<SubstitutionTable> load_substitutions(const std::filesystem::path& path);

}  // namespace cardex::textfix
