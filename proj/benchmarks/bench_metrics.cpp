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

#include <random>

#include "cardex/metrics.hpp"

namespace {

// Truths with jittered copies and some strays, spread over `images` images.
std::vector<cardex::metrics::ImageEval> synthetic(int images, int per_image) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0.1, 0.9), size(0.02, 0.15), jitter(-0.01, 0.01), conf(0, 1);
  std::uniform_int_distribution<int> cat(0, 4);
  std::vector<cardex::metrics::ImageEval> out;
  for (int i = 0; i < images; ++i) {
    cardex::metrics::ImageEval img{"img" + std::to_string(i), {}, {}};
    for (int t = 0; t < per_image; ++t) {
      const cardex::NormBox b{pos(rng), pos(rng), size(rng), size(rng)};
      const int c = cat(rng);
      img.truths.push_back({c, b});
      img.detections.push_back({c, conf(rng), {b.cx + jitter(rng), b.cy + jitter(rng), b.w, b.h}});
      if (t % 3 == 0) img.detections.push_back({cat(rng), conf(rng), {pos(rng), pos(rng), size(rng), size(rng)}});
    }
    out.push_back(std::move(img));
  }
  return out;
}

void BM_MeanAveragePrecision(benchmark::State& state) {
  const auto images = synthetic(static_cast<int>(state.range(0)), 10);
  const auto schema = cardex::CategorySchema::default_front();
  for (auto _ : state) benchmark::DoNotOptimize(cardex::metrics::mean_average_precision(images, schema, {}));
}
BENCHMARK(BM_MeanAveragePrecision)->Arg(10)->Arg(100)->Arg(1000);

void BM_CurvesCsv(benchmark::State& state) {
  const auto images = synthetic(100, 10);
  const auto schema = cardex::CategorySchema::default_front();
  const auto thresholds = cardex::metrics::default_thresholds();
  for (auto _ : state) benchmark::DoNotOptimize(cardex::metrics::curves_to_csv(images, schema, 0.5, thresholds));
}
BENCHMARK(BM_CurvesCsv);

}  // namespace
