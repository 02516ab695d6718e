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

#include "cardex/extraction.hpp"
#include "cardex/imaging.hpp"

namespace {

cardex::ImageBuffer noise(int w, int h, int channels = 1) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(0, 255);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h * channels);
  for (auto& v : px) v = static_cast<std::uint8_t>(d(rng));
  return cardex::ImageBuffer::bytes(w, h, channels, std::move(px));
}

void BM_GaussianBlur(benchmark::State& state) {
  const auto img = noise(640, 400);
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cardex::imaging::gaussian_blur(img, size, size / 3.0));
  state.SetItemsProcessed(state.iterations() * img.sample_count());
}
BENCHMARK(BM_GaussianBlur)->Arg(3)->Arg(5)->Arg(9);

void BM_Canny(benchmark::State& state) {
  const auto img = noise(640, 400);
  for (auto _ : state) benchmark::DoNotOptimize(cardex::imaging::canny_edges(img));
  state.SetItemsProcessed(state.iterations() * img.sample_count());
}
BENCHMARK(BM_Canny);

// A light card on a dark background, photographed at a slight angle.
cardex::ImageBuffer card_photo() {
  auto img = cardex::ImageBuffer::bytes(1400, 1000, 3, 40);
  const cardex::imaging::Quad card{{{120, 110}, {1290, 150}, {1250, 900}, {100, 860}}};
  const auto to_card = cardex::imaging::solve_homography(card, {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const auto p = to_card.apply({double(x), double(y)});
      if (p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1)
        for (int c = 0; c < 3; ++c) img.byte_at(x, y, c) = 220;
    }
  return img;
}

void BM_RectifyCard(benchmark::State& state) {
  const auto img = card_photo();
  for (auto _ : state) benchmark::DoNotOptimize(cardex::extraction::rectify_card(img, 1280, 800));
}
BENCHMARK(BM_RectifyCard)->Unit(benchmark::kMillisecond);

}  // namespace
