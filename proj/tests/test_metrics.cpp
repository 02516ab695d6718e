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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "cardex/error.hpp"
#include "cardex/metrics.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace cardex;
using namespace cardex::metrics;

namespace {

NormBox from_corners(double x1, double y1, double x2, double y2) {
  return {(x1 + x2) / 2, (y1 + y2) / 2, x2 - x1, y2 - y1};
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Iou, Examples) {
  const AbsBox a{0, 0, 2, 2}, b{1, 1, 3, 3}, far{10, 10, 12, 12};
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, far), 0.0);
  EXPECT_NEAR(iou(a, b), 1.0 / 7.0, 1e-12);
  EXPECT_NEAR(iou(from_corners(0, 0, 0.2, 0.2), from_corners(0.1, 0.1, 0.3, 0.3)), 1.0 / 7.0, 1e-12);
}

TEST(Iou, MatchesRasterizationAndIsSymmetric) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> c(0, 30), s(1, 15);
  for (int i = 0; i < 2000; ++i) {
    const int ax = c(rng), ay = c(rng), bx = c(rng), by = c(rng);
    const AbsBox a{double(ax), double(ay), double(ax + s(rng)), double(ay + s(rng))};
    const AbsBox b{double(bx), double(by), double(bx + s(rng)), double(by + s(rng))};
    const double r = oracle::raster_iou(ax, ay, int(a.x2), int(a.y2), bx, by, int(b.x2), int(b.y2));
    EXPECT_NEAR(iou(a, b), r, 1e-6);
    EXPECT_EQ(iou(a, b), iou(b, a));
    EXPECT_GE(iou(a, b), 0.0);
    EXPECT_LE(iou(a, b), 1.0);
  }
}

TEST(Match, Examples) {
  const std::vector<GroundTruth> one{{0, {0.5, 0.5, 0.2, 0.2}}};
  const std::vector<Detection> exact{{0, 0.9, {0.5, 0.5, 0.2, 0.2}}};
  EXPECT_EQ(match_detections(exact, one, 0.5).pairs.size(), 1u);

  const std::vector<Detection> two{{0, 0.6, {0.5, 0.5, 0.2, 0.2}}, {0, 0.9, {0.51, 0.5, 0.2, 0.2}}};
  const auto m = match_detections(two, one, 0.5);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0].detection, 1u);
  EXPECT_EQ(m.unmatched_detections, std::vector<std::size_t>{0});

  const std::vector<Detection> wrong{{1, 0.9, {0.5, 0.5, 0.2, 0.2}}};
  const auto w = match_detections(wrong, one, 0.5);
  EXPECT_TRUE(w.pairs.empty());
  EXPECT_EQ(w.unmatched_detections.size(), 1u);
  EXPECT_EQ(w.unmatched_truths.size(), 1u);
}

TEST(Match, NeverDoubleAssignsATruth) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    for (const auto& img : oracle::random_eval_instance(rng, 3)) {
      const auto m = match_detections(img.detections, img.truths, 0.3);
      std::set<std::size_t> dets, truths;
      for (const auto& p : m.pairs) {
        EXPECT_TRUE(dets.insert(p.detection).second);
        EXPECT_TRUE(truths.insert(p.truth).second);
        EXPECT_EQ(img.detections[p.detection].category, img.truths[p.truth].category);
        EXPECT_GE(p.iou, 0.3);
      }
      EXPECT_EQ(m.pairs.size() + m.unmatched_detections.size(), img.detections.size());
      EXPECT_EQ(m.pairs.size() + m.unmatched_truths.size(), img.truths.size());
      EXPECT_EQ(static_cast<long>(m.pairs.size()), oracle::greedy_tp(img.detections, img.truths, 0.3, 0.0));
    }
  }
}

TEST(Counts, RatiosAndConventions) {
  const BinaryCounts c{8, 2, 4, 0};
  EXPECT_DOUBLE_EQ(precision(c), 0.8);
  EXPECT_NEAR(recall(c), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(f1(c), 0.7272727, 1e-6);
  const BinaryCounts perfect{5, 0, 0, 0};
  EXPECT_EQ(precision(perfect), 1.0);
  EXPECT_EQ(recall(perfect), 1.0);
  EXPECT_EQ(f1(perfect), 1.0);
  const BinaryCounts zero{};
  EXPECT_EQ(precision(zero), 0.0);
  EXPECT_EQ(recall(zero), 0.0);
  EXPECT_EQ(f1(zero), 0.0);
  EXPECT_EQ(accuracy(zero), 0.0);
  EXPECT_DOUBLE_EQ(accuracy({3, 1, 0, 4}), 7.0 / 8.0);

  MatchResult tp_only{{{0, 0, 1.0}}, {}, {}};
  EXPECT_EQ(binary_counts(tp_only, 1, 1), (BinaryCounts{1, 0, 0, 0}));
  MatchResult extra{{{0, 0, 1.0}}, {1}, {}};
  EXPECT_EQ(binary_counts(extra, 2, 1), (BinaryCounts{1, 1, 0, 0}));
  MatchResult missed{{}, {}, {0}};
  EXPECT_EQ(binary_counts(missed, 0, 1), (BinaryCounts{0, 0, 1, 0}));
}

TEST(Counts, F1LiesBetweenPrecisionAndRecall) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> n(0, 50);
  for (int i = 0; i < 2000; ++i) {
    const BinaryCounts c{n(rng), n(rng), n(rng), 0};
    const double p = precision(c), r = recall(c), f = f1(c);
    for (double v : {p, r, f, accuracy(c)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    if (p > 0 && r > 0) {
      EXPECT_GE(f, std::min(p, r) - 1e-15);
      EXPECT_LE(f, std::max(p, r) + 1e-15);
    }
  }
}

TEST(Support, Histogram) {
  const auto& schema = CategorySchema::default_front();
  const auto empty = support({}, schema);
  for (int c = 0; c < schema.size(); ++c) EXPECT_EQ(empty.at(c), 0);
  const std::vector<GroundTruth> three{{0, {}}, {0, {}}, {0, {}}};
  EXPECT_EQ(support(three, schema).at(0), 3);
  EXPECT_EQ(support(three, schema).at(1), 0);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> cat(0, 4);
  std::vector<GroundTruth> mixed;
  std::map<int, long> expect;
  for (int i = 0; i < 100; ++i) {
    mixed.push_back({cat(rng), {}});
    ++expect[mixed.back().category];
  }
  const auto got = support(mixed, schema);
  for (int c = 0; c < 5; ++c) EXPECT_EQ(got.at(c), expect[c]);
}

TEST(Curves, Examples) {
  const std::vector<GroundTruth> t{{0, {0.5, 0.5, 0.2, 0.2}}};
  const std::vector<Detection> perfect{{0, 0.9, {0.5, 0.5, 0.2, 0.2}}};
  const std::vector<double> th{0.5, 0.95};
  const auto c = pr_f1_curves(perfect, t, 0.5, th);
  EXPECT_EQ(c[0].precision, 1.0);
  EXPECT_EQ(c[0].recall, 1.0);
  EXPECT_EQ(c[0].f1, 1.0);
  EXPECT_EQ(c[1].recall, 0.0);

  const std::vector<Detection> fp_then_tp{{0, 0.9, {0.1, 0.1, 0.1, 0.1}}, {0, 0.8, {0.5, 0.5, 0.2, 0.2}}};
  const std::vector<double> th2{0.85, 0.5};
  const auto c2 = pr_f1_curves(fp_then_tp, t, 0.5, th2);
  EXPECT_EQ(c2[0].precision, 0.0);
  EXPECT_EQ(c2[0].recall, 0.0);
  EXPECT_EQ(c2[1].precision, 0.5);
  EXPECT_EQ(c2[1].recall, 1.0);
}

TEST(AveragePrecision, Examples) {
  const std::vector<GroundTruth> t{{0, {0.5, 0.5, 0.2, 0.2}}};
  const std::vector<Detection> exact{{0, 0.9, {0.5, 0.5, 0.2, 0.2}}};
  EXPECT_EQ(average_precision(exact, t, 0.5), 1.0);
  const std::vector<Detection> fp_then_tp{{0, 0.9, {0.1, 0.1, 0.1, 0.1}}, {0, 0.8, {0.5, 0.5, 0.2, 0.2}}};
  EXPECT_DOUBLE_EQ(average_precision(fp_then_tp, t, 0.5), 0.5);
  EXPECT_EQ(average_precision(exact, {}, 0.5), 0.0);
}

TEST(AveragePrecision, EqualsBruteForceOracleOn200RandomInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> k(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int categories = k(rng);
    const auto images = oracle::random_eval_instance(rng, categories);
    for (int c = 0; c < categories; ++c)
      ASSERT_NEAR(average_precision(images, c, 0.5), oracle::brute_ap(images, c, 0.5), 1e-9)
          << "trial " << trial << " category " << c;
  }
}

TEST(AveragePrecision, InvariantUnderMonotoneConfidenceRescaling) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    auto images = oracle::random_eval_instance(rng, 3);
    auto rescaled = images;
    for (auto& img : rescaled)
      for (auto& d : img.detections) d.confidence = std::pow(d.confidence, 3.0) * 0.5 + 0.1;
    for (int c = 0; c < 3; ++c)
      EXPECT_NEAR(average_precision(images, c, 0.5), average_precision(rescaled, c, 0.5), 1e-12);
  }
}

TEST(MeanAveragePrecision, Examples) {
  const CategorySchema two(Side::kFront, {"a", "b"});
  const std::vector<GroundTruth> t{{0, {0.3, 0.3, 0.2, 0.2}}, {1, {0.7, 0.7, 0.2, 0.2}}};
  const std::vector<Detection> perfect{{0, 0.9, t[0].box}, {1, 0.8, t[1].box}};
  const auto r = mean_average_precision(perfect, t, two);
  EXPECT_EQ(r.map50, 1.0);
  EXPECT_EQ(r.confusion, (std::vector<std::vector<long>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));

  const std::vector<Detection> half{{0, 0.9, t[0].box}};
  const auto h = mean_average_precision(half, t, two);
  EXPECT_DOUBLE_EQ(h.map50, 0.5);
  EXPECT_EQ(h.confusion[1][2], 1);  // missed truth lands in the background column

  const std::vector<GroundTruth> only_a{t[0]};
  const auto w = mean_average_precision(perfect, only_a, two);
  EXPECT_FALSE(w.warnings.empty());
  EXPECT_EQ(w.per_category[1].ap, 0.0);
}

TEST(MeanAveragePrecision, ConfusionReconciles) {
  std::mt19937_64 rng(12);
  const auto& schema = CategorySchema::default_front();
  for (int trial = 0; trial < 100; ++trial) {
    const auto images = oracle::random_eval_instance(rng, 5);
    const EvalOptions opt{0.5, 0.4};
    const auto r = mean_average_precision(images, schema, opt);
    long total = 0;
    for (const auto& row : r.confusion)
      for (long v : row) total += v;
    long n_dets = 0;
    for (const auto& img : images)
      for (const auto& d : img.detections) n_dets += d.confidence >= opt.confidence_threshold;
    const auto counts = evaluate_counts(images, 0.5, opt.confidence_threshold);
    EXPECT_EQ(total, n_dets + counts.fn);
    // Mean over the categories that have at least one truth.
    double sum = 0;
    int with_truth = 0;
    for (int c = 0; c < 5; ++c) {
      if (r.per_category[c].support == 0) continue;
      sum += oracle::brute_ap(images, c, 0.5);
      ++with_truth;
    }
    EXPECT_NEAR(r.map50, with_truth ? sum / with_truth : 0.0, 1e-9);
  }
}

TEST(DetectionDump, RoundTripAndErrors) {
  std::mt19937_64 rng(3);
  const auto images = oracle::random_eval_instance(rng, 4);
  const auto back = parse_detection_dump(serialize_detection_dump(images));
  ASSERT_EQ(back.size(), images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    EXPECT_EQ(back[i].image, images[i].image);
    ASSERT_EQ(back[i].detections.size(), images[i].detections.size());
    for (std::size_t k = 0; k < images[i].detections.size(); ++k) {
      EXPECT_EQ(back[i].detections[k].confidence, images[i].detections[k].confidence);
      EXPECT_EQ(back[i].detections[k].box, images[i].detections[k].box);
    }
  }
  const std::string ok = R"({"image":"a.png","detections":[],"truths":[]})";
  try {
    parse_detection_dump(ok + "\n\n" + R"({"image":"b.png","detections":[{"category":0,"confidence":1.5,"box":[0.5,0.5,0.1,0.1]}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_detection_dump("{not json"), ParseError);
  EXPECT_THROW(parse_detection_dump(R"({"detections":[]})"), ParseError);
  EXPECT_THROW(parse_detection_dump(R"({"image":"x","truths":[{"category":0,"box":[0.5,0.5,0.1]}]})"), ParseError);
}

TEST(Reports, JsonAndCsvShape) {
  const CategorySchema two(Side::kFront, {"a", "b"});
  const std::vector<ImageEval> images{{"x", {{0, 0.9, {0.3, 0.3, 0.2, 0.2}}}, {{0, {0.3, 0.3, 0.2, 0.2}}, {1, {0.7, 0.7, 0.1, 0.1}}}}};
  const auto j = nlohmann::json::parse(report_to_json(mean_average_precision(images, two)));
  EXPECT_DOUBLE_EQ(j["map50"].get<double>(), 0.5);
  EXPECT_EQ(j["categories"].size(), 2u);
  EXPECT_EQ(j["confusion"]["matrix"].size(), 3u);
  EXPECT_EQ(j["confusion"]["labels"].back(), "background");
  const auto th = default_thresholds();
  ASSERT_EQ(th.size(), 101u);
  EXPECT_DOUBLE_EQ(th[37], 0.37);
  const auto csv = curves_to_csv(images, two, 0.5, th);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "threshold,category,precision,recall,f1");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) rows += !l.empty();
  EXPECT_EQ(rows, 101 * 3);
}

TEST(Reports, CheckedInGoldenMatchesBruteForceOracle) {
  const std::string dir = CARDEX_FIXTURE_DIR "/eval/";
  const auto images = parse_detection_dump(slurp(dir + "dets.jsonl"));
  const auto golden = nlohmann::json::parse(slurp(dir + "golden_report.json"));
  const auto& schema = CategorySchema::default_front();
  double sum = 0;
  for (int c = 0; c < schema.size(); ++c) {
    const double ap = oracle::brute_ap(images, c, 0.5);
    sum += ap;
    EXPECT_NEAR(golden["categories"][c]["ap"].get<double>(), ap, 1e-12);
  }
  EXPECT_NEAR(golden["map50"].get<double>(), sum / schema.size(), 1e-12);
  EXPECT_EQ(report_to_json(mean_average_precision(images, schema)), slurp(dir + "golden_report.json"));
}
