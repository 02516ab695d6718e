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

#include "cardex/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cardex/error.hpp"

namespace cardex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateBox: return "degenerate_box";
    case ErrorKind::kInvalidDomain: return "invalid_domain";
    case ErrorKind::kInvalidParameter: return "invalid_parameter";
    case ErrorKind::kDegenerateQuad: return "degenerate_quad";
    case ErrorKind::kParse: return "parse_error";
    case ErrorKind::kConfig: return "config_error";
    case ErrorKind::kShape: return "shape_error";
    case ErrorKind::kRange: return "range_error";
    case ErrorKind::kDate: return "date_error";
    case ErrorKind::kNoCardFound: return "no_card_found";
    case ErrorKind::kPort: return "port_error";
    case ErrorKind::kIo: return "io_error";
  }
  return "unknown";
}

std::string_view to_string(Side side) { return side == Side::kFront ? "front" : "back"; }

Side side_from_string(std::string_view s) {
  if (s == "front") return Side::kFront;
  if (s == "back") return Side::kBack;
  throw ConfigError("unknown card side '" + std::string(s) + "'");
}

namespace {

void check_dims(int width, int height, int channels, std::size_t n) {
  if (width < 1 || height < 1) throw InvalidParameter("image dimensions must be >= 1");
  if (channels != 1 && channels != 3) throw InvalidParameter("channels must be 1 or 3");
  if (n != static_cast<std::size_t>(width) * height * channels)
    throw ShapeError("sample count does not match width x height x channels");
}

}  // namespace

ImageBuffer ImageBuffer::bytes(int width, int height, int channels,
                               std::vector<std::uint8_t> samples) {
  check_dims(width, height, channels, samples.size());
  ImageBuffer img;
  img.width_ = width;
  img.height_ = height;
  img.channels_ = channels;
  img.domain_ = SampleDomain::kByte;
  img.bytes_ = std::move(samples);
  return img;
}

ImageBuffer ImageBuffer::bytes(int width, int height, int channels, std::uint8_t fill) {
  if (width < 1 || height < 1) throw InvalidParameter("image dimensions must be >= 1");
  return bytes(width, height, channels,
               std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * channels, fill));
}

ImageBuffer ImageBuffer::units(int width, int height, int channels, std::vector<double> samples) {
  check_dims(width, height, channels, samples.size());
  for (double v : samples) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidDomain("unit sample outside [0, 1]");
  }
  ImageBuffer img;
  img.width_ = width;
  img.height_ = height;
  img.channels_ = channels;
  img.domain_ = SampleDomain::kUnit;
  img.units_ = std::move(samples);
  return img;
}

bool NormBox::valid() const noexcept {
  return cx >= 0 && cx <= 1 && cy >= 0 && cy <= 1 && w > 0 && w <= 1 && h > 0 && h <= 1;
}

CategorySchema::CategorySchema(Side side, std::vector<std::string> names)
    : side_(side), names_(std::move(names)) {
  if (names_.empty()) throw ConfigError("category schema needs at least one name");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ConfigError("category names must be non-empty");
    if (!seen.insert(n).second) throw ConfigError("duplicate category name '" + n + "'");
  }
}

CategorySchema CategorySchema::default_front() {
  return CategorySchema(Side::kFront,
                        {"citizenship_number", "name", "gender", "date_of_birth", "district"});
}

CategorySchema CategorySchema::default_back() {
  return CategorySchema(Side::kBack, {"issuing_officer", "date_of_issue"});
}

const CategorySchema& CategorySchema::defaults(Side side) {
  static const CategorySchema front = default_front();
  static const CategorySchema back = default_back();
  return side == Side::kFront ? front : back;
}

std::optional<int> CategorySchema::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

NormBox clamp_box(const NormBox& box) {
  constexpr double kSlack = 1e-12;
  const double left = box.cx - box.w / 2;
  const double right = box.cx + box.w / 2;
  const double top = box.cy - box.h / 2;
  const double bottom = box.cy + box.h / 2;
  // Boxes whose corners are already inside (up to rounding) come back unchanged,
  // which makes clamping idempotent.
  if (box.w > 0 && box.h > 0 && left >= -kSlack && right <= 1 + kSlack && top >= -kSlack &&
      bottom <= 1 + kSlack) {
    return box;
  }
  const double x1 = std::clamp(left, 0.0, 1.0);
  const double x2 = std::clamp(right, 0.0, 1.0);
  const double y1 = std::clamp(top, 0.0, 1.0);
  const double y2 = std::clamp(bottom, 0.0, 1.0);
  if (!(x2 > x1) || !(y2 > y1)) throw DegenerateBox("box has zero area after clamping");
  return NormBox{(x1 + x2) / 2, (y1 + y2) / 2, x2 - x1, y2 - y1};
}

AbsBox norm_to_abs(const NormBox& box, int width, int height) {
  if (width < 1 || height < 1) throw InvalidParameter("image dimensions must be >= 1");
  return AbsBox{(box.cx - box.w / 2) * width, (box.cy - box.h / 2) * height,
                (box.cx + box.w / 2) * width, (box.cy + box.h / 2) * height};
}

NormBox abs_to_norm(const AbsBox& box, int width, int height) {
  if (width < 1 || height < 1) throw InvalidParameter("image dimensions must be >= 1");
  return NormBox{(box.x1 + box.x2) / 2 / width, (box.y1 + box.y2) / 2 / height,
                 (box.x2 - box.x1) / width, (box.y2 - box.y1) / height};
}

}  // namespace cardex
