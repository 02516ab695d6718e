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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cardex {

enum class Side { kFront, kBack };

std::string_view to_string(Side side);
// Throws ConfigError for anything other than "front" / "back".
Side side_from_string(std::string_view s);

enum class SampleDomain { kByte, kUnit };

// Row-major raster. Byte images keep 8-bit samples; unit images hold reals in
// [0, 1]. Origin is top-left with y growing downward.
class ImageBuffer {
 public:
  ImageBuffer() = default;

  static ImageBuffer bytes(int width, int height, int channels,
                           std::vector<std::uint8_t> samples);
  static ImageBuffer bytes(int width, int height, int channels, std::uint8_t fill = 0);
  static ImageBuffer units(int width, int height, int channels, std::vector<double> samples);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  SampleDomain domain() const noexcept { return domain_; }
  bool empty() const noexcept { return width_ == 0; }
  std::size_t sample_count() const noexcept {
    return static_cast<std::size_t>(width_) * height_ * channels_;
  }

  std::size_t index(int x, int y, int c = 0) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  // Sample in the image's native scale (0..255 for byte, 0..1 for unit).
  double at(int x, int y, int c = 0) const noexcept {
    return domain_ == SampleDomain::kByte ? bytes_[index(x, y, c)] : units_[index(x, y, c)];
  }

  std::span<const std::uint8_t> byte_data() const noexcept { return bytes_; }
  std::span<const double> unit_data() const noexcept { return units_; }

  std::uint8_t& byte_at(int x, int y, int c = 0) { return bytes_[index(x, y, c)]; }
  std::uint8_t byte_at(int x, int y, int c = 0) const { return bytes_[index(x, y, c)]; }
  double& unit_at(int x, int y, int c = 0) { return units_[index(x, y, c)]; }
  double unit_at(int x, int y, int c = 0) const { return units_[index(x, y, c)]; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  SampleDomain domain_ = SampleDomain::kByte;
  std::vector<std::uint8_t> bytes_;
  std::vector<double> units_;
};

// YOLO center-format box, normalized to the image size.
struct NormBox {
  double cx = 0;
  double cy = 0;
  double w = 0;
  double h = 0;

  bool valid() const noexcept;
  friend bool operator==(const NormBox&, const NormBox&) = default;
};

struct AbsBox {
  double x1 = 0;
  double y1 = 0;
  double x2 = 0;
  double y2 = 0;

  double width() const noexcept { return x2 - x1; }
  double height() const noexcept { return y2 - y1; }
  double area() const noexcept { return width() * height(); }
  bool valid() const noexcept { return x1 < x2 && y1 < y2; }
  friend bool operator==(const AbsBox&, const AbsBox&) = default;
};

struct Detection {
  int category = 0;
  double confidence = 0;
  NormBox box;
};

struct GroundTruth {
  int category = 0;
  NormBox box;
};

class CategorySchema {
 public:
  CategorySchema(Side side, std::vector<std::string> names);

  static CategorySchema default_front();
  static CategorySchema default_back();
  static const CategorySchema& defaults(Side side);

  Side side() const noexcept { return side_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  int size() const noexcept { return static_cast<int>(names_.size()); }
  bool contains(int category) const noexcept { return category >= 0 && category < size(); }
  std::optional<int> find(std::string_view name) const;
  const std::string& name(int category) const { return names_.at(category); }

 private:
  Side side_;
  std::vector<std::string> names_;
};

struct LabelEntry {
  int category = 0;
  NormBox box;
  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

struct AnnotationRecord {
  std::string image_path;
  std::vector<LabelEntry> entries;
};

struct FieldValue {
  std::string raw_text;
  std::string corrected_text;
  double confidence = 0;
  bool correction_applied = false;
  // Best lexicon score when the field went through fuzzy matching.
  std::optional<double> similarity;

  friend bool operator==(const FieldValue&, const FieldValue&) = default;
};

struct ExtractionResult {
  Side side = Side::kFront;
  std::map<std::string, FieldValue> fields;
  std::vector<std::string> warnings;

  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

// Clamps the box corners into [0, 1] and recomputes center and size.
// Throws DegenerateBox if nothing of the box is left.
NormBox clamp_box(const NormBox& box);

AbsBox norm_to_abs(const NormBox& box, int width, int height);
NormBox abs_to_norm(const AbsBox& box, int width, int height);

}  // namespace cardex
