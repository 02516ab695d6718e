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

#include "cli.hpp"

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "cardex/annotation_io.hpp"
#include "cardex/error.hpp"
#include "cardex/extraction.hpp"
#include "cardex/image_io.hpp"
#include "cardex/imaging.hpp"
#include "cardex/metrics.hpp"
#include "cardex/service.hpp"

namespace cardex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Raised for argument problems found after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, std::string_view data) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed for " + p.string());
}

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

CategorySchema schema_from(const std::string& names, const std::string& side) {
  const Side s = side_from_string(side);
  if (names.empty()) return CategorySchema::defaults(s);
  return CategorySchema(s, split_commas(names));
}

// ---------------------------------------------------------------------------
// split

struct SplitArgs {
  fs::path input;
  fs::path output;
  double ratio = 0.8;
  std::uint64_t seed = 0;
  std::string names;
  bool dedup = false;
};

int cmd_split(const SplitArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.ratio > 0 && a.ratio < 1)) throw UsageError("--ratio must be strictly between 0 and 1");
  if (!fs::is_directory(a.input)) throw UsageError("--input must be a directory: " + a.input.string());

  std::vector<fs::path> images;
  for (const auto& entry : fs::recursive_directory_iterator(a.input))
    if (entry.is_regular_file() && is_image_file(entry.path())) images.push_back(entry.path());
  std::sort(images.begin(), images.end());

  std::vector<annotation_io::DatasetItem> items;
  std::set<std::string> digests;
  std::size_t duplicates = 0;
  for (const auto& img : images) {
    if (a.dedup) {
      const auto bytes = image_io::read_file(img);
      if (!digests.insert(service::sha256_hex(bytes)).second) {
        ++duplicates;
        continue;
      }
    }
    const fs::path rel_dir = fs::relative(img.parent_path(), a.input);
    fs::path label = img;
    label.replace_extension(".txt");
    items.push_back({img.string(), fs::exists(label) ? label.string() : "",
                     rel_dir.empty() ? "." : rel_dir.generic_string()});
  }
  if (items.empty()) throw UsageError("no images found under " + a.input.string());

  const auto result = annotation_io::split_dataset(items, {a.seed, a.ratio});
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";

  std::map<std::string, std::pair<int, int>> per_stratum;
  auto place = [&](const std::vector<annotation_io::DatasetItem>& subset, const std::string& part) {
    std::string listing;
    for (const auto& item : subset) {
      const fs::path img(item.image_path);
      const fs::path dir = item.stratum == "." ? fs::path() : fs::path(item.stratum);
      const fs::path img_out = a.output / part / "images" / dir / img.filename();
      fs::create_directories(img_out.parent_path());
      fs::copy_file(img, img_out, fs::copy_options::overwrite_existing);
      if (!item.label_path.empty()) {
        fs::path lbl_out = a.output / part / "labels" / dir / img.filename();
        lbl_out.replace_extension(".txt");
        fs::create_directories(lbl_out.parent_path());
        fs::copy_file(item.label_path, lbl_out, fs::copy_options::overwrite_existing);
      }
      listing += fs::relative(img_out, a.output).generic_string() + "\n";
      auto& counts = per_stratum[item.stratum];
      (part == "train" ? counts.first : counts.second) += 1;
    }
    spit(a.output / (part + ".txt"), listing);
  };
  place(result.train, "train");
  place(result.val, "val");

  if (!a.names.empty()) {
    annotation_io::DatasetConfig cfg;
    cfg.train_path = "train/images";
    cfg.val_path = "val/images";
    cfg.names = split_commas(a.names);
    spit(a.output / "dataset.yaml", annotation_io::serialize_dataset_config(cfg));
  }

  for (const auto& [stratum, counts] : per_stratum)
    out << "stratum " << stratum << ": train=" << counts.first << " val=" << counts.second << "\n";
  if (a.dedup) out << "duplicates skipped: " << duplicates << "\n";
  out << "train=" << result.train.size() << " val=" << result.val.size() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  fs::path dets;
  fs::path out;
  fs::path curves;
  double iou = 0.5;
  double conf = 0.5;
  std::string names;
  std::string side = "front";
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.iou > 0 && a.iou <= 1)) throw UsageError("--iou must be in (0, 1]");
  if (!(a.conf >= 0 && a.conf <= 1)) throw UsageError("--conf must be in [0, 1]");
  const CategorySchema schema = schema_from(a.names, a.side);
  std::vector<metrics::ImageEval> images;
  try {
    images = metrics::parse_detection_dump(slurp(a.dets));
  } catch (const ParseError& e) {
    err << "error: " << a.dets.string() << ": " << e.what() << "\n";
    return kRuntime;
  }
  for (const auto& img : images) {
    for (const auto& d : img.detections)
      if (!schema.contains(d.category))
        throw RangeError(img.image + ": detection category " + std::to_string(d.category) + " is outside the schema");
    for (const auto& t : img.truths)
      if (!schema.contains(t.category))
        throw RangeError(img.image + ": truth category " + std::to_string(t.category) + " is outside the schema");
  }
  const auto report = metrics::mean_average_precision(images, schema, {a.iou, a.conf});
  spit(a.out, metrics::report_to_json(report));
  if (!a.curves.empty()) {
    const auto thresholds = metrics::default_thresholds();
    spit(a.curves, metrics::curves_to_csv(images, schema, a.iou, thresholds));
  }
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  out << "map50=" << std::setprecision(6) << report.map50 << " images=" << images.size() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractArgs {
  fs::path front;
  fs::path back;
  fs::path dets;
  fs::path out;
  fs::path config;
  fs::path lexicon_dir;
  fs::path ocr_table;
  std::string ocr_cmd;
};

extraction::PipelineConfig pipeline_config(const fs::path& config, const fs::path& lexicon_dir) {
  fs::path lex = lexicon_dir;
  if (lex.empty()) {
    if (const char* env = std::getenv("CARDEX_LEXICON_DIR"); env && *env) lex = env;
  }
  if (!config.empty()) return extraction::load_pipeline_config(config, lex);
  return extraction::default_pipeline_config(lex.empty() ? fs::path("data/lexicons") : lex);
}

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  if (a.ocr_cmd.empty() == a.ocr_table.empty()) throw UsageError("give exactly one of --ocr-cmd or --ocr-table");
  const auto cfg = pipeline_config(a.config, a.lexicon_dir);
  const ImageBuffer front = image_io::read(a.front);
  const ImageBuffer back = image_io::read(a.back);

  extraction::FixtureDetector detector = extraction::FixtureDetector::from_file(a.dets);
  std::unique_ptr<extraction::OcrPort> ocr;
  if (!a.ocr_cmd.empty()) {
    ocr = std::make_unique<extraction::ExternalOcr>(a.ocr_cmd);
  } else {
    ocr = std::make_unique<extraction::StubOcr>(extraction::StubOcr::load_table(a.ocr_table));
  }

  const auto outcome = extraction::extract_document({front, back, a.front.string(), a.back.string()},
                                                    {detector, *ocr}, cfg);
  int code = kOk;
  for (const auto* side : {&outcome.front, &outcome.back}) {
    if (const auto* e = std::get_if<extraction::SideError>(side)) {
      const char* name = side == &outcome.front ? "front" : "back";
      err << "error: " << name << " side: " << e->message << "\n";
      const bool not_found = e->kind == ErrorKind::kNoCardFound || e->kind == ErrorKind::kDegenerateQuad;
      code = std::max(code, not_found ? static_cast<int>(kNotFound) : static_cast<int>(kRuntime));
    }
  }
  if (code != kOk) return code;

  const auto& f = std::get<ExtractionResult>(outcome.front);
  const auto& b = std::get<ExtractionResult>(outcome.back);
  const json doc{{"front", json::parse(extraction::result_to_json(f))},
                 {"back", json::parse(extraction::result_to_json(b))}};
  spit(a.out, doc.dump(2) + "\n");
  for (const auto* r : {&f, &b})
    for (const auto& w : r->warnings) err << "warning: " << to_string(r->side) << ": " << w << "\n";
  out << "front: " << f.fields.size() << " fields, back: " << b.fields.size() << " fields\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
  fs::path input;
  fs::path out;
  std::string op;
  int size = 5;
  double sigma = 1.4;
  double low = 50;
  double high = 150;
  int width = 1280;
  int height = 800;
};

ImageBuffer to_bytes(const ImageBuffer& img) {
  if (img.domain() == SampleDomain::kByte) return img;
  std::vector<std::uint8_t> bytes(img.sample_count());
  const auto u = img.unit_data();
  std::transform(u.begin(), u.end(), bytes.begin(), [](double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  });
  return ImageBuffer::bytes(img.width(), img.height(), img.channels(), std::move(bytes));
}

int cmd_preprocess(const PreprocessArgs& a, std::ostream& out) {
  const ImageBuffer img = image_io::read(a.input);
  ImageBuffer result;
  if (a.op == "grayscale") {
    result = imaging::to_grayscale(img);
  } else if (a.op == "blur") {
    // The filters work on one channel; color photos are reduced to gray first.
    result = imaging::gaussian_blur(imaging::to_grayscale(img), a.size, a.sigma);
  } else if (a.op == "canny") {
    const auto edges = imaging::canny_edges(imaging::to_grayscale(img), {a.low, a.high, a.size, a.sigma});
    std::vector<std::uint8_t> px(edges.edges.size());
    std::transform(edges.edges.begin(), edges.edges.end(), px.begin(), [](auto e) { return e ? 255 : 0; });
    result = ImageBuffer::bytes(edges.width, edges.height, 1, std::move(px));
  } else if (a.op == "rectify") {
    result = extraction::rectify_card(img, a.width, a.height, {a.low, a.high, a.size, a.sigma});
  } else {
    throw UsageError("unknown --op '" + a.op + "'");
  }
  image_io::write_png(a.out, to_bytes(result));
  out << a.op << ": " << result.width() << "x" << result.height() << " -> " << a.out.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// augment

struct AugmentArgs {
  fs::path input;
  fs::path output;
  std::vector<std::string> specs;
};

int cmd_augment(const AugmentArgs& a, std::ostream& out) {
  std::vector<imaging::AugmentSpec> specs;
  for (const auto& s : a.specs) {
    try {
      specs.push_back(imaging::parse_augment_spec(s));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (!fs::is_directory(a.input)) throw UsageError("--input must be a directory: " + a.input.string());
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(a.input))
    if (entry.is_regular_file() && is_image_file(entry.path())) images.push_back(entry.path());
  std::sort(images.begin(), images.end());
  fs::create_directories(a.output);

  std::size_t written = 0;
  for (const auto& img_path : images) {
    const ImageBuffer img = image_io::read(img_path);
    fs::path label_path = img_path;
    label_path.replace_extension(".txt");
    std::vector<LabelEntry> labels;
    if (fs::exists(label_path)) labels = annotation_io::parse_yolo_label(slurp(label_path));
    std::vector<NormBox> boxes;
    for (const auto& l : labels) boxes.push_back(l.box);

    for (std::size_t i = 0; i < specs.size(); ++i) {
      auto [aug, aug_boxes] = imaging::augment(img, boxes, specs[i]);
      std::string tag = imaging::to_string(specs[i]);
      std::replace(tag.begin(), tag.end(), ':', '_');
      const fs::path stem = a.output / (img_path.stem().string() + "__" + tag);
      image_io::write_png(fs::path(stem.string() + ".png"), to_bytes(aug));
      if (!labels.empty() || fs::exists(label_path)) {
        std::vector<LabelEntry> out_labels;
        for (std::size_t k = 0; k < labels.size(); ++k) out_labels.push_back({labels[k].category, aug_boxes[k]});
        spit(fs::path(stem.string() + ".txt"), annotation_io::serialize_yolo_label(out_labels));
      }
      ++written;
    }
  }
  out << "augmented images=" << images.size() << " outputs=" << written << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// serve

struct ServeArgs {
  std::optional<std::string> bind;
  std::optional<int> port;
  std::optional<std::string> config;
  std::optional<std::string> lexicon_dir;
  std::optional<std::string> history;
  std::optional<std::string> dets;
  std::optional<std::string> ocr_table;
  std::optional<std::string> ocr_cmd;
  bool fixture_mode = false;
};

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  service::ServeSettings s = service::settings_from_env();
  if (a.bind) s.bind = *a.bind;
  if (a.port) s.port = *a.port;
  if (a.config) s.config = *a.config;
  if (a.lexicon_dir) s.lexicon_dir = *a.lexicon_dir;
  if (a.history) s.history = *a.history;
  if (a.dets) s.fixture_dets = *a.dets;
  if (a.ocr_table) s.ocr_table = *a.ocr_table;
  if (a.ocr_cmd) s.ocr_command = *a.ocr_cmd;
  if (a.fixture_mode) s.fixture_mode = true;

  // Block termination signals in every thread; a dedicated waiter stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto svc = service::make_service(s);
  for (const auto& w : svc->history().warnings()) err << "warning: " << w << "\n";
  service::Server server(*svc);
  const int port = server.bind(s.bind, s.port);
  out << "listening on " << s.bind << ":" << port << std::endl;

  std::thread waiter([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() returned: either the waiter stopped us or the server failed.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  out << "stopped" << std::endl;
  return kOk;
}

}  // namespace

int kernel_check(const kernels::KernelSet& set, const kernels::CheckOptions& options, std::ostream& out) {
  const auto results = kernels::run_kernel_checks(set, options);
  std::size_t kw = 6, cw = 5;
  for (const auto& r : results) {
    kw = std::max(kw, r.kernel.size());
    cw = std::max(cw, r.check.size());
  }
  out << std::left << std::setw(static_cast<int>(kw)) << "kernel" << "  " << std::setw(static_cast<int>(cw))
      << "check" << "  result  detail\n";
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << std::left << std::setw(static_cast<int>(kw)) << r.kernel << "  " << std::setw(static_cast<int>(cw))
        << r.check << "  " << (r.passed ? "PASS  " : "FAIL  ") << "  " << r.detail << "\n";
  }
  out << (all ? "all kernel checks passed" : "kernel checks FAILED") << "\n";
  return all ? kOk : kRuntime;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cardex: ID-card field extraction toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cardex 0.1.0");

  SplitArgs split;
  auto* c_split = app.add_subcommand("split", "Shuffle and split an image/label tree into train and val");
  c_split->add_option("--input", split.input, "Input directory (subfolders are strata)")->required();
  c_split->add_option("--output", split.output, "Output directory")->required();
  c_split->add_option("--ratio", split.ratio, "Train fraction, strictly between 0 and 1")->required();
  c_split->add_option("--seed", split.seed, "Shuffle seed")->required();
  c_split->add_option("--names", split.names, "Comma-separated class names; writes dataset.yaml");
  c_split->add_flag("--dedup", split.dedup, "Skip byte-identical images (SHA-256)");

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "Score a detection dump: mAP, P/R/F1, confusion, curves");
  c_eval->add_option("--dets", eval.dets, "Detection dump (JSON lines)")->required()->check(CLI::ExistingFile);
  c_eval->add_option("--out", eval.out, "Report JSON path")->required();
  c_eval->add_option("--curves", eval.curves, "PR/F1 curve CSV path");
  c_eval->add_option("--iou", eval.iou, "IoU threshold")->capture_default_str();
  c_eval->add_option("--conf", eval.conf, "Confidence threshold for P/R/F1 and confusion")->capture_default_str();
  c_eval->add_option("--names", eval.names, "Comma-separated class names");
  c_eval->add_option("--side", eval.side, "Default schema when --names is absent")
      ->check(CLI::IsMember({"front", "back"}))
      ->capture_default_str();

  ExtractArgs ext;
  auto* c_ext = app.add_subcommand("extract", "Extract fields from a front/back card pair");
  c_ext->add_option("--front", ext.front, "Front image")->required()->check(CLI::ExistingFile);
  c_ext->add_option("--back", ext.back, "Back image")->required()->check(CLI::ExistingFile);
  c_ext->add_option("--dets", ext.dets, "Detection dump replayed by the fixture detector")
      ->required()
      ->check(CLI::ExistingFile);
  c_ext->add_option("--out", ext.out, "Result JSON path")->required();
  c_ext->add_option("--ocr-cmd", ext.ocr_cmd, "OCR command template ({image} {lang} {field})");
  c_ext->add_option("--ocr-table", ext.ocr_table, "Stub OCR table (field<TAB>text[<TAB>conf])")
      ->check(CLI::ExistingFile);
  c_ext->add_option("--config", ext.config, "Pipeline YAML")->check(CLI::ExistingFile);
  c_ext->add_option("--lexicon-dir", ext.lexicon_dir, "Lexicon directory")->check(CLI::ExistingDirectory);

  kernels::CheckOptions kc;
  auto* c_kc = app.add_subcommand("kernel-check", "Finite-difference and property checks of the loss kernels");
  c_kc->add_option("--seed", kc.seed, "Random seed")->capture_default_str();
  c_kc->add_option("--points", kc.points, "Random points per check")->capture_default_str();

  PreprocessArgs pre;
  auto* c_pre = app.add_subcommand("preprocess", "grayscale, blur, canny or rectify one image");
  c_pre->add_option("--input", pre.input, "Input image")->required()->check(CLI::ExistingFile);
  c_pre->add_option("--out", pre.out, "Output PNG")->required();
  c_pre->add_option("--op", pre.op, "Operation")
      ->required()
      ->check(CLI::IsMember({"grayscale", "blur", "canny", "rectify"}));
  c_pre->add_option("--size", pre.size, "Blur kernel size")->capture_default_str();
  c_pre->add_option("--sigma", pre.sigma, "Blur sigma")->capture_default_str();
  c_pre->add_option("--low", pre.low, "Canny low threshold")->capture_default_str();
  c_pre->add_option("--high", pre.high, "Canny high threshold")->capture_default_str();
  c_pre->add_option("--width", pre.width, "Rectified width")->capture_default_str();
  c_pre->add_option("--height", pre.height, "Rectified height")->capture_default_str();

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "Apply augmentations to every image (and YOLO label) in a folder");
  c_aug->add_option("--input", aug.input, "Input directory")->required();
  c_aug->add_option("--output", aug.output, "Output directory")->required();
  c_aug->add_option("--spec", aug.specs,
                    "flip_h | flip_v | rotate90_cw | brightness_contrast:A:B | scale:F (repeatable)")
      ->required();

  ServeArgs srv;
  auto* c_srv = app.add_subcommand("serve", "Run the REST service");
  c_srv->add_option("--bind", srv.bind, "Bind address [CARDEX_BIND]");
  c_srv->add_option("--port", srv.port, "Port, 0 for any free port [CARDEX_PORT]")->check(CLI::Range(0, 65535));
  c_srv->add_option("--config", srv.config, "Pipeline YAML [CARDEX_CONFIG]");
  c_srv->add_option("--lexicon-dir", srv.lexicon_dir, "Lexicon directory [CARDEX_LEXICON_DIR]");
  c_srv->add_option("--history", srv.history, "History log path [CARDEX_HISTORY]");
  c_srv->add_option("--dets", srv.dets, "Detection dump for the fixture detector [CARDEX_FIXTURE_DETS]");
  c_srv->add_option("--ocr-table", srv.ocr_table, "Stub OCR table [CARDEX_OCR_TABLE]");
  c_srv->add_option("--ocr-cmd", srv.ocr_cmd, "OCR command template [CARDEX_OCR_CMD]");
  c_srv->add_flag("--fixture-mode", srv.fixture_mode, "Use the stub OCR even if a command is set [CARDEX_FIXTURE_MODE]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << "run '" << argv[0] << " " << sub->get_name() << " --help' for usage\n";
    return kUsage;
  }

  try {
    if (c_split->parsed()) return cmd_split(split, out, err);
    if (c_eval->parsed()) return cmd_evaluate(eval, out, err);
    if (c_ext->parsed()) return cmd_extract(ext, out, err);
    if (c_kc->parsed()) return kernel_check({}, kc, out);
    if (c_pre->parsed()) return cmd_preprocess(pre, out);
    if (c_aug->parsed()) return cmd_augment(aug, out);
    if (c_srv->parsed()) return cmd_serve(srv, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoCardFound& e) {
    err << "error: " << e.what() << "\n";
    return kNotFound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}

}  // namespace cardex::cli
