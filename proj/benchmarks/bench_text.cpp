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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "cardex/textfix.hpp"

namespace {

void BM_LevenshteinAscii(benchmark::State& state) {
  const std::string a(static_cast<std::size_t>(state.range(0)), 'a');
  std::string b = a;
  for (std::size_t i = 0; i < b.size(); i += 3) b[i] = 'b';
  for (auto _ : state) benchmark::DoNotOptimize(cardex::textfix::levenshtein(std::string_view(a), std::string_view(b)));
}
BENCHMARK(BM_LevenshteinAscii)->Arg(8)->Arg(32)->Arg(128);

void BM_LevenshteinDevanagari(benchmark::State& state) {
  const std::string a = "काठमाडौं महानगरपालिका", b = "काठमाडौ महानगरपालका";
  for (auto _ : state) benchmark::DoNotOptimize(cardex::textfix::levenshtein(std::string_view(a), std::string_view(b)));
}
BENCHMARK(BM_LevenshteinDevanagari);

void BM_CorrectToken(benchmark::State& state) {
  std::vector<std::string> entries;
  for (int i = 0; i < 77; ++i) entries.push_back("District" + std::to_string(i * 37));
  entries.push_back("Kaski");
  const cardex::textfix::Lexicon lex("districts", entries);
  for (auto _ : state) benchmark::DoNotOptimize(cardex::textfix::correct_token("Kaskl", lex));
}
BENCHMARK(BM_CorrectToken);

}  // namespace
