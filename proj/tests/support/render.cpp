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

#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"

namespace cardex::scene {

namespace {

constexpr std::uint8_t kCard[3] = {225, 215, 190};
constexpr std::uint8_t kBackground[3] = {35, 40, 45};
constexpr std::uint8_t kInk[3] = {70, 60, 55};
constexpr std::uint8_t kFiducial[3] = {0, 0, 0};

std::vector<imaging::Point2> corner_fiducials(int w, int h) {
  const double x0 = 60, y0 = 60, x1 = w - 61, y1 = h - 61;
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

const std::uint8_t* shade(const CardDesign& d, double x, double y) {
  if (x < 0 || y < 0 || x > d.width - 1 || y > d.height - 1) return kBackground;
  for (const auto& f : d.fiducials) {
    const double dx = x - f.x, dy = y - f.y;
    if (dx * dx + dy * dy <= d.fiducial_radius * d.fiducial_radius) return kFiducial;
  }
  for (const auto& f : d.fields) {
    if (x >= f.box.x1 && x < f.box.x2 && y >= f.box.y1 && y < f.box.y2) {
      // Horizontal strokes so crops are not flat.
      const int row = static_cast<int>(y - f.box.y1);
      return (row / 6) % 2 == 0 ? kInk : kCard;
    }
  }
  return kCard;
}

}  // namespace

CardDesign front_design() {
  CardDesign d;
  d.fields = {
      {"citizenship_number", 0, {200, 120, 700, 180}},
      {"name", 1, {200, 230, 900, 290}},
      {"gender", 2, {200, 340, 500, 400}},
      {"date_of_birth", 3, {200, 450, 700, 510}},
      {"district", 4, {200, 560, 700, 620}},
  };
  d.fiducials = corner_fiducials(d.width, d.height);
  return d;
}

CardDesign back_design() {
  CardDesign d;
  d.fields = {
      {"issuing_officer", 0, {200, 200, 900, 260}},
      {"date_of_issue", 1, {200, 400, 700, 460}},
  };
  d.fiducials = corner_fiducials(d.width, d.height);
  return d;
}

Frame front_frame() { return {1400, 1000, {{{130, 110}, {1290, 160}, {1250, 900}, {100, 850}}}}; }

Frame back_frame() { return {1400, 1000, {{{150, 140}, {1270, 120}, {1300, 870}, {120, 880}}}}; }

Frame rotated_frame(int frame_w, int frame_h, const CardDesign& d, double degrees, double scale) {
  const double a = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(a), s = std::sin(a);
  const double hw = (d.width - 1) * scale / 2, hh = (d.height - 1) * scale / 2;
  const double cx = (frame_w - 1) / 2.0, cy = (frame_h - 1) / 2.0;
  Frame f{frame_w, frame_h, {}};
  const double local[4][2] = {{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}};
  for (int i = 0; i < 4; ++i)
    f.corners[i] = {cx + c * local[i][0] - s * local[i][1], cy + s * local[i][0] + c * local[i][1]};
  return f;
}

ImageBuffer render(const CardDesign& d, const Frame& frame, int supersample) {
  const imaging::Quad design{{{0, 0}, {d.width - 1.0, 0}, {d.width - 1.0, d.height - 1.0}, {0, d.height - 1.0}}};
  const auto to_design = oracle::homography(frame.corners, design);
  auto img = ImageBuffer::bytes(frame.width, frame.height, 3, 0);
  const int n = supersample;
  for (int y = 0; y < frame.height; ++y)
    for (int x = 0; x < frame.width; ++x) {
      int acc[3] = {0, 0, 0};
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const imaging::Point2 p{x - 0.5 + (i + 0.5) / n, y - 0.5 + (j + 0.5) / n};
          const auto q = oracle::apply(to_design, p);
          const std::uint8_t* c = shade(d, q.x, q.y);
          for (int k = 0; k < 3; ++k) acc[k] += c[k];
        }
      for (int k = 0; k < 3; ++k)
        img.byte_at(x, y, k) = static_cast<std::uint8_t>((acc[k] + n * n / 2) / (n * n));
    }
  return img;
}

ImageBuffer blank(int w, int h, std::uint8_t value) { return ImageBuffer::bytes(w, h, 3, value); }

imaging::Point2 locate_fiducial(const ImageBuffer& img, const imaging::Point2& guess, int window) {
  double sx = 0, sy = 0, n = 0;
  const int gx = static_cast<int>(std::lround(guess.x)), gy = static_cast<int>(std::lround(guess.y));
  for (int y = std::max(0, gy - window); y <= std::min(img.height() - 1, gy + window); ++y)
    for (int x = std::max(0, gx - window); x <= std::min(img.width() - 1, gx + window); ++x) {
      double mean = 0;
      for (int c = 0; c < img.channels(); ++c) mean += img.at(x, y, c);
      mean /= img.channels();
      if (img.domain() == SampleDomain::kUnit) mean *= 255;
      if (mean < 100) {
        sx += x;
        sy += y;
        n += 1;
      }
    }
  if (n == 0) return {-1, -1};
  return {sx / n, sy / n};
}

std::vector<Detection> design_detections(const CardDesign& d, double confidence) {
  std::vector<Detection> out;
  for (const auto& f : d.fields)
    out.push_back({f.category, confidence, abs_to_norm(f.box, d.width, d.height)});
  return out;
}

}  // namespace cardex::scene
