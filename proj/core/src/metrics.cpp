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

#include "cardex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "cardex/error.hpp"

namespace cardex::metrics {

using nlohmann::json;

double iou(const AbsBox& a, const AbsBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0 || ih <= 0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double iou(const NormBox& a, const NormBox& b) { return iou(norm_to_abs(a, 1, 1), norm_to_abs(b, 1, 1)); }

MatchResult match_detections(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                             double iou_thresh) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dets[a].confidence > dets[b].confidence; });

  MatchResult result;
  std::vector<bool> claimed(truths.size(), false);
  std::vector<bool> det_matched(dets.size(), false);
  for (std::size_t d : order) {
    std::optional<std::size_t> best;
    double best_iou = -1;
    for (std::size_t t = 0; t < truths.size(); ++t) {
      if (claimed[t] || truths[t].category != dets[d].category) continue;
      const double v = iou(dets[d].box, truths[t].box);
      if (v >= iou_thresh && v > best_iou) {
        best = t;
        best_iou = v;
      }
    }
    if (best) {
      claimed[*best] = true;
      det_matched[d] = true;
      result.pairs.push_back({d, *best, best_iou});
    }
  }
  for (std::size_t d = 0; d < dets.size(); ++d)
    if (!det_matched[d]) result.unmatched_detections.push_back(d);
  for (std::size_t t = 0; t < truths.size(); ++t)
    if (!claimed[t]) result.unmatched_truths.push_back(t);
  return result;
}

BinaryCounts binary_counts(const MatchResult& match, std::size_t n_dets, std::size_t n_truths) {
  const long tp = static_cast<long>(match.pairs.size());
  return BinaryCounts{tp, static_cast<long>(n_dets) - tp, static_cast<long>(n_truths) - tp, 0};
}

namespace {

double ratio(long num, long den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

}  // namespace

double precision(const BinaryCounts& c) { return ratio(c.tp, c.tp + c.fp); }
double recall(const BinaryCounts& c) { return ratio(c.tp, c.tp + c.fn); }
double f1(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }
double f1(const BinaryCounts& c) { return f1(precision(c), recall(c)); }
double accuracy(const BinaryCounts& c) { return ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn); }

std::map<int, long> support(std::span<const GroundTruth> truths, const CategorySchema& schema) {
  std::map<int, long> out;
  for (int k = 0; k < schema.size(); ++k) out[k] = 0;
  for (const auto& t : truths) ++out[t.category];
  return out;
}

namespace {

struct Filtered {
  std::vector<Detection> dets;
  std::vector<GroundTruth> truths;
};

Filtered filter(const ImageEval& img, double min_conf, std::optional<int> category) {
  Filtered f;
  for (const auto& d : img.detections)
    if (d.confidence >= min_conf && (!category || d.category == *category)) f.dets.push_back(d);
  for (const auto& t : img.truths)
    if (!category || t.category == *category) f.truths.push_back(t);
  return f;
}

}  // namespace

BinaryCounts evaluate_counts(std::span<const ImageEval> images, double iou_thresh, double min_confidence,
                             std::optional<int> category) {
  BinaryCounts total;
  for (const auto& img : images) {
    const Filtered f = filter(img, min_confidence, category);
    const BinaryCounts c =
        binary_counts(match_detections(f.dets, f.truths, iou_thresh), f.dets.size(), f.truths.size());
    total.tp += c.tp;
    total.fp += c.fp;
    total.fn += c.fn;
  }
  return total;
}

std::vector<CurvePoint> pr_f1_curves(std::span<const ImageEval> images, double iou_thresh,
                                     std::span<const double> thresholds, std::optional<int> category) {
  std::vector<CurvePoint> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    const BinaryCounts c = evaluate_counts(images, iou_thresh, t, category);
    const double p = precision(c);
    const double r = recall(c);
    out.push_back({t, p, r, f1(p, r)});
  }
  return out;
}

std::vector<CurvePoint> pr_f1_curves(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                                     double iou_thresh, std::span<const double> thresholds) {
  const ImageEval img{"", {dets.begin(), dets.end()}, {truths.begin(), truths.end()}};
  return pr_f1_curves(std::span<const ImageEval>(&img, 1), iou_thresh, thresholds);
}

double average_precision(std::span<const ImageEval> images, int category, double iou_thresh) {
  struct Scored {
    double confidence;
    bool tp;
  };
  std::vector<Scored> scored;
  long n_truths = 0;
  for (const auto& img : images) {
    const Filtered f = filter(img, -1.0, category);
    n_truths += static_cast<long>(f.truths.size());
    const MatchResult m = match_detections(f.dets, f.truths, iou_thresh);
    std::vector<bool> tp(f.dets.size(), false);
    for (const auto& p : m.pairs) tp[p.detection] = true;
    for (std::size_t i = 0; i < f.dets.size(); ++i) scored.push_back({f.dets[i].confidence, tp[i]});
  }
  if (n_truths == 0) return 0.0;
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.confidence > b.confidence; });

  // One PR point per distinct confidence cutoff.
  std::vector<double> rec;
  std::vector<double> prec;
  long tp = 0;
  long fp = 0;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    (scored[i].tp ? tp : fp) += 1;
    if (i + 1 == scored.size() || scored[i + 1].confidence != scored[i].confidence) {
      rec.push_back(ratio(tp, n_truths));
      prec.push_back(ratio(tp, tp + fp));
    }
  }
  // Precision envelope: non-increasing in recall.
  for (std::size_t i = prec.size(); i-- > 1;) prec[i - 1] = std::max(prec[i - 1], prec[i]);
  double ap = 0;
  double prev_r = 0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    ap += (rec[i] - prev_r) * prec[i];
    prev_r = rec[i];
  }
  return std::clamp(ap, 0.0, 1.0);
}

double average_precision(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                         double iou_thresh) {
  ImageEval img;
  for (auto d : dets) {
    d.category = 0;
    img.detections.push_back(d);
  }
  for (auto t : truths) {
    t.category = 0;
    img.truths.push_back(t);
  }
  return average_precision(std::span<const ImageEval>(&img, 1), 0, iou_thresh);
}

EvalReport mean_average_precision(std::span<const ImageEval> images, const CategorySchema& schema,
                                  const EvalOptions& options) {
  const int k = schema.size();
  EvalReport report;
  report.iou_threshold = options.iou_threshold;
  report.confidence_threshold = options.confidence_threshold;
  report.categories = schema.names();
  report.per_category.resize(k);
  report.confusion.assign(k + 1, std::vector<long>(k + 1, 0));

  std::vector<long> truth_count(k, 0);
  for (const auto& img : images) {
    for (const auto& t : img.truths) {
      if (!schema.contains(t.category)) throw RangeError("truth category out of schema range");
      ++truth_count[t.category];
    }
    for (const auto& d : img.detections)
      if (!schema.contains(d.category)) throw RangeError("detection category out of schema range");
  }

  double ap_sum = 0;
  int ap_n = 0;
  for (int c = 0; c < k; ++c) {
    auto& r = report.per_category[c];
    r.support = truth_count[c];
    if (truth_count[c] == 0) {
      report.warnings.push_back("category '" + schema.name(c) + "' has no ground truth; AP reported as 0");
    } else {
      r.ap = average_precision(images, c, options.iou_threshold);
      ap_sum += r.ap;
      ++ap_n;
    }
    const BinaryCounts counts = evaluate_counts(images, options.iou_threshold, options.confidence_threshold, c);
    r.precision = precision(counts);
    r.recall = recall(counts);
    r.f1 = f1(r.precision, r.recall);
  }
  report.map50 = ap_n == 0 ? 0.0 : ap_sum / ap_n;

  for (const auto& img : images) {
    const Filtered f = filter(img, options.confidence_threshold, std::nullopt);
    const MatchResult m = match_detections(f.dets, f.truths, options.iou_threshold);
    for (const auto& p : m.pairs) ++report.confusion[f.truths[p.truth].category][f.dets[p.detection].category];
    for (std::size_t d : m.unmatched_detections) ++report.confusion[k][f.dets[d].category];
    for (std::size_t t : m.unmatched_truths) ++report.confusion[f.truths[t].category][k];
  }
  return report;
}

EvalReport mean_average_precision(std::span<const Detection> dets, std::span<const GroundTruth> truths,
                                  const CategorySchema& schema, const EvalOptions& options) {
  const ImageEval img{"", {dets.begin(), dets.end()}, {truths.begin(), truths.end()}};
  return mean_average_precision(std::span<const ImageEval>(&img, 1), schema, options);
}

namespace {

NormBox box_from_json(const json& j, std::size_t line) {
  if (!j.is_array() || j.size() != 4) throw ParseError(line, "box must be [cx, cy, w, h]");
  NormBox b;
  try {
    b = NormBox{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  } catch (const json::exception&) {
    throw ParseError(line, "box coordinates must be numbers");
  }
  if (!b.valid()) throw ParseError(line, "box coordinates out of range");
  return b;
}

int category_from_json(const json& j, std::size_t line) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(line, "category must be a non-negative integer");
  return j.get<int>();
}

}  // namespace

std::vector<ImageEval> parse_detection_dump(std::string_view text) {
  std::vector<ImageEval> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("image") || !j["image"].is_string())
      throw ParseError(line_no, "record needs a string 'image'");
    ImageEval img;
    img.image = j["image"].get<std::string>();
    if (j.contains("detections")) {
      if (!j["detections"].is_array()) throw ParseError(line_no, "'detections' must be an array");
      for (const auto& d : j["detections"]) {
        if (!d.is_object() || !d.contains("category") || !d.contains("confidence") || !d.contains("box"))
          throw ParseError(line_no, "detection needs category, confidence and box");
        Detection det;
        det.category = category_from_json(d["category"], line_no);
        if (!d["confidence"].is_number()) throw ParseError(line_no, "confidence must be a number");
        det.confidence = d["confidence"].get<double>();
        if (!(det.confidence >= 0 && det.confidence <= 1)) throw ParseError(line_no, "confidence outside [0, 1]");
        det.box = box_from_json(d["box"], line_no);
        img.detections.push_back(det);
      }
    }
    if (j.contains("truths")) {
      if (!j["truths"].is_array()) throw ParseError(line_no, "'truths' must be an array");
      for (const auto& t : j["truths"]) {
        if (!t.is_object() || !t.contains("category") || !t.contains("box"))
          throw ParseError(line_no, "truth needs category and box");
        img.truths.push_back({category_from_json(t["category"], line_no), box_from_json(t["box"], line_no)});
      }
    }
    out.push_back(std::move(img));
  }
  return out;
}

std::string serialize_detection_dump(std::span<const ImageEval> images) {
  std::string out;
  for (const auto& img : images) {
    json j;
    j["image"] = img.image;
    j["detections"] = json::array();
    for (const auto& d : img.detections)
      j["detections"].push_back(
          {{"category", d.category}, {"confidence", d.confidence}, {"box", {d.box.cx, d.box.cy, d.box.w, d.box.h}}});
    j["truths"] = json::array();
    for (const auto& t : img.truths)
      j["truths"].push_back({{"category", t.category}, {"box", {t.box.cx, t.box.cy, t.box.w, t.box.h}}});
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string report_to_json(const EvalReport& report, int indent) {
  json j;
  j["iou_threshold"] = report.iou_threshold;
  j["confidence_threshold"] = report.confidence_threshold;
  j["map50"] = report.map50;
  j["categories"] = json::array();
  for (std::size_t c = 0; c < report.categories.size(); ++c) {
    const auto& r = report.per_category[c];
    j["categories"].push_back({{"name", report.categories[c]},
                               {"ap", r.ap},
                               {"precision", r.precision},
                               {"recall", r.recall},
                               {"f1", r.f1},
                               {"support", r.support}});
  }
  json labels = report.categories;
  labels.push_back("background");
  j["confusion"] = {{"labels", labels}, {"rows", "true"}, {"columns", "predicted"}, {"matrix", report.confusion}};
  j["warnings"] = report.warnings;
  return j.dump(indent) + "\n";
}

std::string curves_to_csv(std::span<const ImageEval> images, const CategorySchema& schema, double iou_thresh,
                          std::span<const double> thresholds) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "threshold,category,precision,recall,f1\n";
  auto emit = [&](const std::string& name, const std::vector<CurvePoint>& pts) {
    for (const auto& p : pts)
      os << p.threshold << ',' << name << ',' << p.precision << ',' << p.recall << ',' << p.f1 << '\n';
  };
  emit("all", pr_f1_curves(images, iou_thresh, thresholds));
  for (int c = 0; c < schema.size(); ++c) emit(schema.name(c), pr_f1_curves(images, iou_thresh, thresholds, c));
  return os.str();
}

std::vector<double> default_thresholds() {
  std::vector<double> t(101);
  for (int i = 0; i <= 100; ++i) t[i] = i / 100.0;
  return t;
}

}  // namespace cardex::metrics
