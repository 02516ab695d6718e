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

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cardex/error.hpp"
#include "cardex/imaging.hpp"
#include "cardex/metrics.hpp"
#include "cardex/textfix.hpp"
#include "cardex/types.hpp"

namespace cardex::extraction {

struct DetectRequest {
  const ImageBuffer& image;  // rectified card
  Side side;
  // Where the image came from: a file path, or "front"/"back" for uploads.
  std::string source;
};

class DetectorPort {
 public:
  virtual ~DetectorPort() = default;
  virtual std::vector<Detection> detect(const DetectRequest& request) = 0;
  // True when detect() may be called from several threads at once.
  virtual bool concurrent_safe() const { return false; }
};

struct OcrRequest {
  const ImageBuffer& crop;
  std::string language;
  std::string field;
};

struct OcrReading {
  std::string text;
  double confidence = 1.0;
};

class OcrPort {
 public:
  virtual ~OcrPort() = default;
  virtual OcrReading recognize(const OcrRequest& request) = 0;
  virtual bool concurrent_safe() const { return false; }
};

// Replays a detection dump (metrics JSON-lines format). A record matches a
// request when its image basename, or basename without extension, equals the
// basename of the request source.
class FixtureDetector : public DetectorPort {
 public:
  explicit FixtureDetector(std::vector<metrics::ImageEval> records);
  static FixtureDetector from_file(const std::filesystem::path& dump);

  std::vector<Detection> detect(const DetectRequest& request) override;
  bool concurrent_safe() const override { return true; }

 private:
  std::vector<metrics::ImageEval> records_;
};

// Runs an external OCR command. The template is split on whitespace and each
// token may contain {image}, {lang} and {field}. Stdout is the recognized text;
// an optional trailing "<TAB>confidence" on the last line sets the confidence.
class ExternalOcr : public OcrPort {
 public:
  ExternalOcr(std::string command_template, std::filesystem::path scratch_dir = {});
  // Removes the scratch directory if nothing else is left in it.
  ~ExternalOcr() override;
  ExternalOcr(const ExternalOcr&) = delete;
  ExternalOcr& operator=(const ExternalOcr&) = delete;

  OcrReading recognize(const OcrRequest& request) override;
  bool concurrent_safe() const override { return true; }

  const std::string& command_template() const noexcept { return template_; }

 private:
  std::string template_;
  std::filesystem::path scratch_;
  std::atomic<unsigned long> counter_{0};
};

// Answers with fixed text per field; counts calls.
class StubOcr : public OcrPort {
 public:
  explicit StubOcr(std::map<std::string, OcrReading> by_field) : by_field_(std::move(by_field)) {}
  // "field<TAB>text[<TAB>confidence]" per line.
  static std::map<std::string, OcrReading> parse_table(std::string_view text);
  static std::map<std::string, OcrReading> load_table(const std::filesystem::path& path);
  static StubOcr from_table(std::string_view text) { return StubOcr(parse_table(text)); }
  static StubOcr from_file(const std::filesystem::path& path) { return StubOcr(load_table(path)); }

  OcrReading recognize(const OcrRequest& request) override;
  bool concurrent_safe() const override { return true; }

  std::size_t calls() const noexcept { return calls_; }
  std::vector<std::string> fields_seen() const;

 private:
  std::map<std::string, OcrReading> by_field_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mu_;
  std::vector<std::string> seen_;
};

enum class FieldKind { kPlain, kLexicon, kGender, kDate };

struct FieldRule {
  FieldKind kind = FieldKind::kPlain;
  std::string lexicon;  // lexicon name for kLexicon / kGender
};

struct PipelineConfig {
  CategorySchema schema_front = CategorySchema::default_front();
  CategorySchema schema_back = CategorySchema::default_back();
  std::map<std::string, textfix::Lexicon> lexicons;
  std::map<std::string, textfix::MappedLexicon> mapped_lexicons;
  std::vector<textfix::SubstitutionTable> substitutions;
  std::map<std::string, FieldRule> field_rules;
  imaging::CannyParams canny;
  int crop_blur_size = 3;
  double crop_blur_sigma = 1.0;
  std::string ocr_language = "nep";
  std::string ocr_command;
  double min_detection_confidence = 0.25;
  int front_width = 1280;
  int front_height = 800;
  int back_width = 1280;
  int back_height = 800;

  const CategorySchema& schema(Side side) const { return side == Side::kFront ? schema_front : schema_back; }
  // Throws ConfigError when a rule references an unknown field or lexicon.
  void validate() const;
};

// YAML config; lexicon/substitution file paths resolve against `lexicon_dir`
// (or the config file's directory when empty).
PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                    const std::filesystem::path& lexicon_dir = {});
PipelineConfig parse_pipeline_config(std::string_view yaml_text, const std::filesystem::path& base_dir);
// Default schemas plus the shipped lexicons found in `lexicon_dir`.
PipelineConfig default_pipeline_config(const std::filesystem::path& lexicon_dir);

imaging::Quad detect_card_quad(const ImageBuffer& img, const imaging::CannyParams& canny = {});
ImageBuffer rectify_card(const ImageBuffer& img, int out_w, int out_h, const imaging::CannyParams& canny = {});
ImageBuffer preprocess_crop(const ImageBuffer& crop, int blur_size = 3, double blur_sigma = 1.0);

struct Ports {
  DetectorPort& detector;
  OcrPort& ocr;
};

ExtractionResult extract_side(const ImageBuffer& img, Side side, const std::string& source, Ports ports,
                              const PipelineConfig& cfg);

struct SideError {
  ErrorKind kind;
  std::string message;
};

using SideOutcome = std::variant<ExtractionResult, SideError>;

struct DocumentOutcome {
  SideOutcome front;
  SideOutcome back;
};

struct DocumentInput {
  const ImageBuffer& front;
  const ImageBuffer& back;
  std::string front_source = "front";
  std::string back_source = "back";
};

// Sides are independent: a failure on one is reported without aborting the other.
DocumentOutcome extract_document(const DocumentInput& input, Ports ports, const PipelineConfig& cfg);

// --- JSON ---

std::string result_to_json(const ExtractionResult& r, int indent = 2);
ExtractionResult result_from_json(std::string_view text);

}  // namespace cardex::extraction
