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

#include "cardex/extraction.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <yaml-cpp/yaml.h>

#include "cardex/error.hpp"
#include "cardex/image_io.hpp"
#include "result_json.hpp"

extern char** environ;

namespace cardex::extraction {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Ports

FixtureDetector::FixtureDetector(std::vector<metrics::ImageEval> records) : records_(std::move(records)) {}

FixtureDetector FixtureDetector::from_file(const fs::path& dump) {
  std::ifstream in(dump, std::ios::binary);
  if (!in) throw IoError("cannot open detection dump " + dump.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return FixtureDetector(metrics::parse_detection_dump(ss.str()));
}

std::vector<Detection> FixtureDetector::detect(const DetectRequest& request) {
  const fs::path src(request.source);
  const std::string base = src.filename().string();
  for (const auto& rec : records_) {
    const fs::path p(rec.image);
    if (p.filename().string() == base || p.stem().string() == base) return rec.detections;
  }
  return {};
}

ExternalOcr::ExternalOcr(std::string command_template, fs::path scratch_dir)
    : template_(std::move(command_template)), scratch_(std::move(scratch_dir)) {
  if (template_.find_first_not_of(" \t") == std::string::npos) throw ConfigError("OCR command template is empty");
  static std::atomic<unsigned long> instances{0};
  if (scratch_.empty())
    scratch_ = fs::temp_directory_path() /
               ("cardex-ocr-" + std::to_string(::getpid()) + "-" + std::to_string(instances.fetch_add(1)));
}

ExternalOcr::~ExternalOcr() {
  std::error_code ec;
  fs::remove(scratch_, ec);  // leaves a non-empty directory alone
}

namespace {

std::string substitute(std::string token, const std::string& key, const std::string& value) {
  for (std::size_t pos = token.find(key); pos != std::string::npos; pos = token.find(key, pos + value.size()))
    token.replace(pos, key.size(), value);
  return token;
}

struct ProcessOutput {
  int exit_code = -1;
  std::string out;
};

ProcessOutput run_process(const std::vector<std::string>& argv) {
  int fds[2];
  if (::pipe(fds) != 0) throw PortError("OCR: pipe() failed");
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, fds[0]);
  posix_spawn_file_actions_addclose(&actions, fds[1]);

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(fds[1]);
  if (rc != 0) {
    ::close(fds[0]);
    throw PortError("OCR: cannot start '" + argv[0] + "': " + std::strerror(rc));
  }
  ProcessOutput result;
  char buf[4096];
  for (ssize_t n; (n = ::read(fds[0], buf, sizeof buf)) != 0;) {
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    result.out.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

OcrReading parse_ocr_output(std::string out) {
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  OcrReading r;
  const std::size_t nl = out.rfind('\n');
  const std::size_t tab = out.rfind('\t');
  if (tab != std::string::npos && (nl == std::string::npos || tab > nl)) {
    const std::string tail = out.substr(tab + 1);
    double conf = 0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), conf);
    if (ec == std::errc() && ptr == tail.data() + tail.size() && conf >= 0 && conf <= 1) {
      r.confidence = conf;
      out.erase(tab);
    }
  }
  r.text = std::move(out);
  return r;
}

}  // namespace

OcrReading ExternalOcr::recognize(const OcrRequest& request) {
  std::error_code ec;
  fs::create_directories(scratch_, ec);
  const fs::path image = scratch_ / ("crop-" + std::to_string(counter_.fetch_add(1)) + ".png");
  image_io::write_png(image, request.crop);

  std::vector<std::string> argv;
  std::istringstream tokens(template_);
  for (std::string tok; tokens >> tok;) {
    tok = substitute(tok, "{image}", image.string());
    tok = substitute(tok, "{lang}", request.language);
    tok = substitute(tok, "{field}", request.field);
    argv.push_back(tok);
  }
  ProcessOutput out;
  try {
    out = run_process(argv);
  } catch (...) {
    fs::remove(image, ec);
    throw;
  }
  fs::remove(image, ec);
  if (out.exit_code != 0)
    throw PortError("OCR command exited with status " + std::to_string(out.exit_code) + " for field '" +
                    request.field + "'");
  return parse_ocr_output(std::move(out.out));
}

std::map<std::string, OcrReading> StubOcr::parse_table(std::string_view text) {
  std::map<std::string, OcrReading> table;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::size_t t1 = line.find('\t');
    if (t1 == std::string::npos) throw ParseError(line_no, "OCR table line needs 'field<TAB>text'");
    OcrReading r;
    std::string rest = line.substr(t1 + 1);
    const std::size_t t2 = rest.find('\t');
    if (t2 != std::string::npos) {
      const std::string conf = rest.substr(t2 + 1);
      auto [ptr, ec] = std::from_chars(conf.data(), conf.data() + conf.size(), r.confidence);
      if (ec != std::errc() || ptr != conf.data() + conf.size() || r.confidence < 0 || r.confidence > 1)
        throw ParseError(line_no, "OCR table confidence must be a number in [0, 1]");
      rest.erase(t2);
    }
    r.text = rest;
    table[line.substr(0, t1)] = r;
  }
  return table;
}

std::map<std::string, OcrReading> StubOcr::load_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open OCR table " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

OcrReading StubOcr::recognize(const OcrRequest& request) {
  ++calls_;
  {
    std::lock_guard lock(mu_);
    seen_.push_back(request.field);
  }
  auto it = by_field_.find(request.field);
  if (it == by_field_.end()) return {"", 0.0};
  return it->second;
}

std::vector<std::string> StubOcr::fields_seen() const {
  std::lock_guard lock(mu_);
  return seen_;
}

// ---------------------------------------------------------------------------
// Configuration

void PipelineConfig::validate() const {
  for (const auto& [field, rule] : field_rules) {
    if (!schema_front.find(field) && !schema_back.find(field))
      throw ConfigError("field rule for '" + field + "' matches no schema category");
    if (rule.kind == FieldKind::kLexicon && !lexicons.count(rule.lexicon))
      throw ConfigError("field '" + field + "' references unknown lexicon '" + rule.lexicon + "'");
    if (rule.kind == FieldKind::kGender && !mapped_lexicons.count(rule.lexicon))
      throw ConfigError("field '" + field + "' references unknown mapped lexicon '" + rule.lexicon + "'");
  }
  if (!(min_detection_confidence >= 0 && min_detection_confidence <= 1))
    throw ConfigError("min_detection_confidence must be in [0, 1]");
  if (front_width < 1 || front_height < 1 || back_width < 1 || back_height < 1)
    throw ConfigError("rectified card size must be positive");
}

namespace {

FieldKind kind_from_string(const std::string& s) {
  if (s == "plain") return FieldKind::kPlain;
  if (s == "lexicon") return FieldKind::kLexicon;
  if (s == "gender") return FieldKind::kGender;
  if (s == "date") return FieldKind::kDate;
  throw ConfigError("unknown field kind '" + s + "'");
}

fs::path resolve(const fs::path& base, const std::string& file) {
  const fs::path p(file);
  return p.is_absolute() || base.empty() ? p : base / p;
}

// Date fields default to date normalization when no rule is configured.
void add_default_date_rules(PipelineConfig& cfg) {
  for (const CategorySchema* schema : {&cfg.schema_front, &cfg.schema_back})
    for (const auto& name : schema->names())
      if (name.find("date") != std::string::npos && !cfg.field_rules.count(name))
        cfg.field_rules[name] = FieldRule{FieldKind::kDate, ""};
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view yaml_text, const fs::path& base_dir) {
  PipelineConfig cfg;
  try {
    const YAML::Node root = YAML::Load(std::string(yaml_text));
    if (root.IsNull()) {
      add_default_date_rules(cfg);
      return cfg;
    }
    if (!root.IsMap()) throw ConfigError("pipeline config must be a mapping");
    if (const auto s = root["schemas"]) {
      if (s["front"]) cfg.schema_front = CategorySchema(Side::kFront, s["front"].as<std::vector<std::string>>());
      if (s["back"]) cfg.schema_back = CategorySchema(Side::kBack, s["back"].as<std::vector<std::string>>());
    }
    if (const auto lex = root["lexicons"]) {
      for (const auto& kv : lex) {
        const auto name = kv.first.as<std::string>();
        const double thr = kv.second["threshold"] ? kv.second["threshold"].as<double>() : textfix::kDefaultThreshold;
        auto loaded = textfix::load_lexicon(resolve(base_dir, kv.second["file"].as<std::string>()), thr);
        cfg.lexicons.emplace(name, textfix::Lexicon(name, loaded.entries(), thr));
      }
    }
    if (const auto lex = root["mapped_lexicons"]) {
      for (const auto& kv : lex) {
        const auto name = kv.first.as<std::string>();
        const double thr = kv.second["threshold"] ? kv.second["threshold"].as<double>() : textfix::kDefaultThreshold;
        std::ifstream in(resolve(base_dir, kv.second["file"].as<std::string>()), std::ios::binary);
        if (!in) throw IoError("cannot open mapped lexicon for '" + name + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg.mapped_lexicons.emplace(name, textfix::parse_mapped_lexicon(name, ss.str(), thr));
      }
    }
    if (const auto subs = root["substitutions"]) {
      cfg.substitutions = textfix::load_substitutions(resolve(base_dir, subs.as<std::string>()));
    }
    if (const auto fields = root["fields"]) {
      for (const auto& kv : fields) {
        FieldRule rule;
        rule.kind = kind_from_string(kv.second["kind"].as<std::string>());
        if (kv.second["lexicon"]) rule.lexicon = kv.second["lexicon"].as<std::string>();
        cfg.field_rules[kv.first.as<std::string>()] = rule;
      }
    }
    if (const auto ocr = root["ocr"]) {
      if (ocr["language"]) cfg.ocr_language = ocr["language"].as<std::string>();
      if (ocr["command"]) cfg.ocr_command = ocr["command"].as<std::string>();
    }
    if (const auto det = root["detection"]) {
      if (det["min_confidence"]) cfg.min_detection_confidence = det["min_confidence"].as<double>();
    }
    if (const auto rect = root["rectify"]) {
      if (rect["front"]) {
        const auto v = rect["front"].as<std::vector<int>>();
        if (v.size() != 2) throw ConfigError("rectify.front must be [width, height]");
        cfg.front_width = v[0];
        cfg.front_height = v[1];
      }
      if (rect["back"]) {
        const auto v = rect["back"].as<std::vector<int>>();
        if (v.size() != 2) throw ConfigError("rectify.back must be [width, height]");
        cfg.back_width = v[0];
        cfg.back_height = v[1];
      }
    }
    if (const auto c = root["canny"]) {
      if (c["low"]) cfg.canny.low = c["low"].as<double>();
      if (c["high"]) cfg.canny.high = c["high"].as<double>();
      if (c["blur_size"]) cfg.canny.blur_size = c["blur_size"].as<int>();
      if (c["blur_sigma"]) cfg.canny.blur_sigma = c["blur_sigma"].as<double>();
    }
    if (const auto b = root["crop_blur"]) {
      if (b["size"]) cfg.crop_blur_size = b["size"].as<int>();
      if (b["sigma"]) cfg.crop_blur_sigma = b["sigma"].as<double>();
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("pipeline config: ") + e.what());
  }
  add_default_date_rules(cfg);
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const fs::path& path, const fs::path& lexicon_dir) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open pipeline config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pipeline_config(ss.str(), lexicon_dir.empty() ? path.parent_path() : lexicon_dir);
}

PipelineConfig default_pipeline_config(const fs::path& lexicon_dir) {
  PipelineConfig cfg;
  if (fs::exists(lexicon_dir / "districts.txt")) {
    cfg.lexicons.emplace("districts", textfix::load_lexicon(lexicon_dir / "districts.txt"));
    cfg.field_rules["district"] = {FieldKind::kLexicon, "districts"};
  }
  if (fs::exists(lexicon_dir / "gender.tsv")) {
    cfg.mapped_lexicons.emplace("gender", textfix::load_mapped_lexicon(lexicon_dir / "gender.tsv"));
    cfg.field_rules["gender"] = {FieldKind::kGender, "gender"};
  }
  if (fs::exists(lexicon_dir / "substitutions.tsv"))
    cfg.substitutions = textfix::load_substitutions(lexicon_dir / "substitutions.tsv");
  add_default_date_rules(cfg);
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Card geometry

namespace {

using imaging::Point2;
using imaging::Quad;

struct IPoint {
  long x, y;
  auto operator<=>(const IPoint&) const = default;
};

long cross(const IPoint& o, const IPoint& a, const IPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; counter-clockwise in a y-up frame, no collinear points.
std::vector<IPoint> convex_hull(std::vector<IPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double quad_area(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double s = (a.x * b.y - b.x * a.y) + (b.x * c.y - c.x * b.y) + (c.x * d.y - d.x * c.y) +
                   (d.x * a.y - a.x * d.y);
  return std::abs(s) / 2;
}

}  // namespace

imaging::Quad detect_card_quad(const ImageBuffer& img, const imaging::CannyParams& canny) {
  const imaging::EdgeMap edges = imaging::canny_edges(img, canny);
  std::vector<IPoint> pts;
  for (int y = 0; y < edges.height; ++y)
    for (int x = 0; x < edges.width; ++x)
      if (edges.at(x, y)) pts.push_back({x, y});
  if (pts.size() < 4) throw NoCardFound("no card boundary: too few edge pixels");

  const std::vector<IPoint> hull_full = convex_hull(std::move(pts));
  if (hull_full.size() < 4) throw NoCardFound("no card boundary: degenerate edge hull");
  constexpr std::size_t kMaxHull = 64;
  std::vector<Point2> hull;
  const std::size_t n_full = hull_full.size();
  const std::size_t keep = std::min(n_full, kMaxHull);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& p = hull_full[i * n_full / keep];
    hull.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  }

  // Vertices of a convex polygon taken in order form a convex quad, so the
  // exhaustive search only needs ordered index quadruples.
  const std::size_t n = hull.size();
  double best = -1;
  Quad quad{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const double a = quad_area(hull[i], hull[j], hull[k], hull[l]);
          if (a > best) {
            best = a;
            quad = {hull[i], hull[j], hull[k], hull[l]};
          }
        }
  const double frame = static_cast<double>(img.width()) * img.height();
  if (best < 0.01 * frame) throw NoCardFound("no card boundary: quadrilateral area too small");

  // Order by angle around the centroid (clockwise on screen), starting top-left.
  Point2 c{0, 0};
  for (const auto& p : quad) {
    c.x += p.x / 4;
    c.y += p.y / 4;
  }
  std::sort(quad.begin(), quad.end(), [&](const Point2& a, const Point2& b) {
    return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
  });
  const auto tl = std::min_element(quad.begin(), quad.end(),
                                   [](const Point2& a, const Point2& b) { return a.x + a.y < b.x + b.y; });
  std::rotate(quad.begin(), tl, quad.end());
  return quad;
}

ImageBuffer rectify_card(const ImageBuffer& img, int out_w, int out_h, const imaging::CannyParams& canny) {
  const Quad quad = detect_card_quad(img, canny);
  const double w = out_w - 1;
  const double h = out_h - 1;
  const Quad target{Point2{0, 0}, Point2{w, 0}, Point2{w, h}, Point2{0, h}};
  return imaging::warp_perspective(img, imaging::solve_homography(quad, target), out_w, out_h);
}

ImageBuffer preprocess_crop(const ImageBuffer& crop, int blur_size, double blur_sigma) {
  ImageBuffer gray = imaging::to_grayscale(crop);
  if (gray.domain() == SampleDomain::kUnit) {
    std::vector<std::uint8_t> bytes(gray.sample_count());
    const auto units = gray.unit_data();
    std::transform(units.begin(), units.end(), bytes.begin(),
                   [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255.0)); });
    gray = ImageBuffer::bytes(gray.width(), gray.height(), 1, std::move(bytes));
  }
  return imaging::gaussian_blur(gray, blur_size, blur_sigma);
}

// ---------------------------------------------------------------------------
// Field assembly

namespace {

struct Corrected {
  std::string text;
  std::optional<double> similarity;
  std::optional<std::string> warning;
};

// A field whose rule cannot place the text (no close lexicon entry, unparseable
// date) keeps its raw OCR text and gains a warning.
Corrected correct_field(const std::string& field, const std::string& raw, const PipelineConfig& cfg) {
  std::string text = textfix::normalize_whitespace(raw);
  for (const auto& table : cfg.substitutions)
    if (table.scope == "all" || table.scope == field) text = textfix::apply_substitutions(text, table);

  Corrected out{text, std::nullopt, std::nullopt};
  const auto rule_it = cfg.field_rules.find(field);
  if (rule_it == cfg.field_rules.end() || text.empty()) return out;
  const FieldRule& rule = rule_it->second;
  switch (rule.kind) {
    case FieldKind::kPlain:
      break;
    case FieldKind::kLexicon: {
      const auto c = textfix::correct_token(text, cfg.lexicons.at(rule.lexicon));
      out.text = c.value;
      out.similarity = c.similarity;
      if (!c.applied) {
        out.text = raw;
        out.warning = "field '" + field + "': no lexicon entry close enough to '" + text + "'";
      }
      break;
    }
    case FieldKind::kGender: {
      const auto c = textfix::standardize_gender(text, cfg.mapped_lexicons.at(rule.lexicon));
      out.text = c.value;
      out.similarity = c.similarity;
      if (!c.applied) {
        out.text = raw;
        out.warning = "field '" + field + "': unrecognized gender term '" + text + "'";
      }
      break;
    }
    case FieldKind::kDate:
      try {
        out.text = textfix::normalize_date(text);
      } catch (const DateError& e) {
        out.text = raw;
        out.warning = "field '" + field + "': " + e.what();
      }
      break;
  }
  return out;
}

template <typename F>
auto call_port(const char* what, F&& f) {
  try {
    return f();
  } catch (const PortError&) {
    throw;
  } catch (const std::exception& e) {
    throw PortError(std::string(what) + " port failed: " + e.what());
  } catch (...) {
    throw PortError(std::string(what) + " port failed");
  }
}

}  // namespace

ExtractionResult extract_side(const ImageBuffer& img, Side side, const std::string& source, Ports ports,
                              const PipelineConfig& cfg) {
  const CategorySchema& schema = cfg.schema(side);
  const int out_w = side == Side::kFront ? cfg.front_width : cfg.back_width;
  const int out_h = side == Side::kFront ? cfg.front_height : cfg.back_height;
  const ImageBuffer card = rectify_card(img, out_w, out_h, cfg.canny);

  const std::vector<Detection> dets =
      call_port("detector", [&] { return ports.detector.detect(DetectRequest{card, side, source}); });

  // Highest confidence per category among detections above the floor.
  std::vector<std::optional<Detection>> best(schema.size());
  for (const auto& d : dets) {
    if (!schema.contains(d.category)) throw PortError("detector returned category outside the schema");
    if (!(d.confidence >= 0 && d.confidence <= 1)) throw PortError("detector returned confidence outside [0, 1]");
    if (!d.box.valid()) throw PortError("detector returned an invalid box");
    if (d.confidence < cfg.min_detection_confidence) continue;
    auto& slot = best[d.category];
    if (!slot || d.confidence > slot->confidence) slot = d;
  }

  ExtractionResult result;
  result.side = side;
  for (int c = 0; c < schema.size(); ++c) {
    const std::string& field = schema.name(c);
    if (!best[c]) {
      result.warnings.push_back("no detection for field '" + field + "'");
      continue;
    }
    ImageBuffer region;
    try {
      region = imaging::crop(card, norm_to_abs(best[c]->box, card.width(), card.height()));
    } catch (const DegenerateBox&) {
      result.warnings.push_back("detection for field '" + field + "' lies outside the card");
      continue;
    }
    const ImageBuffer prepared = preprocess_crop(region, cfg.crop_blur_size, cfg.crop_blur_sigma);
    const OcrReading reading =
        call_port("OCR", [&] { return ports.ocr.recognize(OcrRequest{prepared, cfg.ocr_language, field}); });
    if (!(reading.confidence >= 0 && reading.confidence <= 1))
      throw PortError("OCR returned confidence outside [0, 1]");

    const Corrected corrected = correct_field(field, reading.text, cfg);
    FieldValue value;
    value.raw_text = reading.text;
    value.corrected_text = corrected.text;
    value.confidence = reading.confidence;
    value.correction_applied = value.corrected_text != value.raw_text;
    value.similarity = corrected.similarity;
    if (corrected.warning) result.warnings.push_back(*corrected.warning);
    result.fields.emplace(field, std::move(value));
  }
  return result;
}

DocumentOutcome extract_document(const DocumentInput& input, Ports ports, const PipelineConfig& cfg) {
  auto one = [&](const ImageBuffer& img, Side side, const std::string& source) -> SideOutcome {
    try {
      return extract_side(img, side, source, ports, cfg);
    } catch (const Error& e) {
      return SideError{e.kind(), e.what()};
    }
  };
  return DocumentOutcome{one(input.front, Side::kFront, input.front_source),
                         one(input.back, Side::kBack, input.back_source)};
}

std::string result_to_json(const ExtractionResult& r, int indent) {
  return detail::result_to_json(r).dump(indent) + "\n";
}

ExtractionResult result_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("extraction result JSON: ") + e.what());
  }
  return detail::result_from_json(j);
}

}  // namespace cardex::extraction
