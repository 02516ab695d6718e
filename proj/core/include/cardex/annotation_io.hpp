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
#include <string>
#include <string_view>
#include <vector>

#include "cardex/types.hpp"

namespace cardex::annotation_io {

struct DatasetConfig {
  std::string train_path;
  std::string val_path;
  std::vector<std::string> names;
};

struct SplitSpec {
  std::uint64_t seed = 0;
  double train_ratio = 0.8;
};

// One image with its (optional) label file. `stratum` is the distribution
// unit the split preserves, e.g. "front/cased".
struct DatasetItem {
  std::string image_path;
  std::string label_path;
  std::string stratum;

  friend bool operator==(const DatasetItem&, const DatasetItem&) = default;
};

struct SplitResult {
  std::vector<DatasetItem> train;
  std::vector<DatasetItem> val;
  std::vector<std::string> warnings;
};

// "cat cx cy w h" per non-empty line. Throws ParseError with the 1-based line.
std::vector<LabelEntry> parse_yolo_label(std::string_view text, const CategorySchema& schema);

// Same as above but only checks that categories are non-negative.
std::vector<LabelEntry> parse_yolo_label(std::string_view text);

// One line per entry, 6-decimal fixed point, newline-separated (no trailing newline).
std::string serialize_yolo_label(const std::vector<LabelEntry>& entries);

// Reads `train`, `val` and `names` (list or index map); other keys are ignored.
DatasetConfig parse_dataset_config(std::string_view yaml_text);
std::string serialize_dataset_config(const DatasetConfig& cfg);

SplitResult split_dataset(std::vector<DatasetItem> items, const SplitSpec& spec);

}  // namespace cardex::annotation_io
