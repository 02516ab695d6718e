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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cardex/types.hpp"

namespace cardex::metrics {

struct BinaryCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long tn = 0;
  friend bool operator==(const BinaryCounts&, const BinaryCounts&) = default;
};

struct MatchPair {
  std::size_t detection = 0;
  std::size_t truth = 0;
  double iou = 0;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::size_t> unmatched_detections;
  std::vector<std::size_t> unmatched_truths;
};

struct CurvePoint {
  double threshold = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Detections and ground truth of one image; matching never crosses images.
struct ImageEval {
  std::string image;
  std::vector<Detection> detections;
  std::vector<GroundTruth> truths;
};

struct CategoryReport {
  double ap = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  long support = 0;
};

struct EvalOptions {
  double iou_threshold = 0.5;
  // Gates per-category precision/recall/F1 and the confusion matrix. AP and
  // the curves always use every detection.
  double confidence_threshold = 0.5;
};

struct EvalReport {
  double iou_threshold = 0.5;
  double confidence_threshold = 0.5;
  std::vector<std::string> categories;
  std::vector<CategoryReport> per_category;
  double map50 = 0;
  // (K+1) x (K+1): rows = true category, columns = predicted category, index K
  // is background.
  std::vector<std::vector<long>> confusion;
  std::vector<std::string> warnings;
};

double iou(const AbsBox& a, const AbsBox& b);
double iou(const NormBox& a, const NormBox& b);

// Greedy: detections in descending confidence (ties by index) each claim the
// highest-IoU unclaimed truth of the same category with IoU >= iou_thresh.
MatchResult match_detections(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                             double iou_thresh);

BinaryCounts binary_counts(const MatchResult& match, std::size_t n_dets, std::size_t n_truths);

double precision(const BinaryCounts& c);
double recall(const BinaryCounts& c);
double f1(const BinaryCounts& c);
double f1(double precision, double recall);
// Degenerate for detection (tn is always 0); kept for classification-style inputs.
double accuracy(const BinaryCounts& c);

std::map<int, long> support(std::span<const GroundTruth> truths, const CategorySchema& schema);

// Counts over all images using only detections with confidence >= min_confidence.
BinaryCounts evaluate_counts(std::span<const ImageEval> images, double iou_thresh,
                             double min_confidence = 0.0,
                             std::optional<int> category = std::nullopt);

std::vector<CurvePoint> pr_f1_curves(std::span<const ImageEval> images, double iou_thresh,
                                     std::span<const double> thresholds,
                                     std::optional<int> category = std::nullopt);
std::vector<CurvePoint> pr_f1_curves(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                                     double iou_thresh, std::span<const double> thresholds);

// All-points interpolated AP for one category (every detection/truth of other
// categories is ignored). No truths -> 0.
double average_precision(std::span<const ImageEval> images, int category, double iou_thresh);
// Single image, single category: every input is treated as one category.
double average_precision(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                         double iou_thresh);

EvalReport mean_average_precision(std::span<const ImageEval> images, const CategorySchema& schema,
                                  const EvalOptions& options = {});
EvalReport mean_average_precision(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                                  const CategorySchema& schema, const EvalOptions& options = {});

// --- dump / report formats ---

// JSON lines: {"image": ..., "detections": [{"category", "confidence", "box": [cx,cy,w,h]}],
// "truths": [{"category", "box"}]}. Blank lines are skipped. Throws ParseError.
std::vector<ImageEval> parse_detection_dump(std::string_view text);
std::string serialize_detection_dump(std::span<const ImageEval> images);

std::string report_to_json(const EvalReport& report, int indent = 2);

// threshold,category,precision,recall,f1 rows; category "all" plus one block per category.
std::string curves_to_csv(std::span<const ImageEval> images, const CategorySchema& schema,
                          double iou_thresh, std::span<const double> thresholds);

// 0.00, 0.01, ..., 1.00
std::vector<double> default_thresholds();

}  // namespace cardex::metrics
