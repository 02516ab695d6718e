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

#include "cardex/service.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <unistd.h>

#include <openssl/evp.h>

#include "httplib.h"
#include "json.hpp"

#include "cardex/error.hpp"
#include "cardex/image_io.hpp"
#include "result_json.hpp"

namespace cardex::service {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Encoding helpers

std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text) {
  std::string clean;
  clean.reserve(text.size());
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') clean.push_back(c);
  if (clean.size() % 4 != 0) return std::nullopt;

  std::size_t pad = 0;
  while (pad < 2 && pad < clean.size() && clean[clean.size() - 1 - pad] == '=') ++pad;
  for (std::size_t i = 0; i + pad < clean.size(); ++i) {
    const char c = clean[i];
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' ||
                    c == '/';
    if (!ok) return std::nullopt;
  }
  std::vector<std::uint8_t> out(clean.size() / 4 * 3);
  if (clean.empty()) return out;
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(clean.data()),
                                static_cast<int>(clean.size()));
  if (n < 0) return std::nullopt;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ids and timestamps

UlidGenerator::UlidGenerator(Clock clock, std::uint64_t seed) : clock_(std::move(clock)), rng_(seed) {}

std::string UlidGenerator::next() {
  const auto now = clock_ ? clock_() : std::chrono::system_clock::now();
  auto ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count());
  std::lock_guard lock(mu_);
  if (ms > last_ms_) {
    last_ms_ = ms;
    lo_ = rng_();
    hi_ = static_cast<std::uint16_t>(rng_() & 0xFFFF);
  } else {
    ms = last_ms_;
    if (++lo_ == 0 && ++hi_ == 0) ++last_ms_, ms = last_ms_;
  }
  const unsigned __int128 value = (static_cast<unsigned __int128>(ms & 0xFFFFFFFFFFFFull) << 80) |
                                  (static_cast<unsigned __int128>(hi_) << 64) | lo_;
  static constexpr char kCrockford[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";
  std::string out(26, '0');
  for (int i = 25; i >= 0; --i) out[i] = kCrockford[static_cast<unsigned>(value >> (5 * (25 - i))) & 31];
  return out;
}

std::string format_utc(std::chrono::system_clock::time_point t) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms % 1000));
  return buf;
}

// ---------------------------------------------------------------------------
// History entries

std::string_view to_string(EntryStatus s) noexcept {
  switch (s) {
    case EntryStatus::kExtracted:
      return "extracted";
    case EntryStatus::kEdited:
      return "edited";
    case EntryStatus::kSaved:
      return "saved";
  }
  return "extracted";
}

EntryStatus status_from_string(std::string_view s) {
  if (s == "extracted") return EntryStatus::kExtracted;
  if (s == "edited") return EntryStatus::kEdited;
  if (s == "saved") return EntryStatus::kSaved;
  throw ParseError(0, "unknown entry status '" + std::string(s) + "'");
}

namespace {

json entry_json(const HistoryEntry& e) {
  return {{"id", e.id},
          {"created_at", e.created_at},
          {"results", {{"front", detail::result_to_json(e.front)}, {"back", detail::result_to_json(e.back)}}},
          {"edited_fields", e.edited_fields},
          {"status", std::string(to_string(e.status))}};
}

HistoryEntry entry_from(const json& j) {
  try {
    HistoryEntry e;
    e.id = j.at("id").get<std::string>();
    e.created_at = j.at("created_at").get<std::string>();
    e.front = detail::result_from_json(j.at("results").at("front"));
    e.back = detail::result_from_json(j.at("results").at("back"));
    e.edited_fields = j.at("edited_fields").get<std::map<std::string, std::string>>();
    e.status = status_from_string(j.at("status").get<std::string>());
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(0, std::string("history entry: ") + ex.what());
  }
}

}  // namespace

std::string entry_to_json(const HistoryEntry& e, int indent) { return entry_json(e).dump(indent); }

HistoryEntry entry_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(0, std::string("history entry: ") + ex.what());
  }
  return entry_from(j);
}

std::string render_text_document(const HistoryEntry& e, const CategorySchema& front, const CategorySchema& back) {
  std::string out;
  auto emit = [&](const CategorySchema& schema, const ExtractionResult& r) {
    for (const auto& name : schema.names()) {
      if (auto it = e.edited_fields.find(name); it != e.edited_fields.end()) {
        out += name + ": " + it->second + "\n";
      } else if (auto f = r.fields.find(name); f != r.fields.end()) {
        out += name + ": " + f->second.corrected_text + "\n";
      }
    }
  };
  emit(front, e.front);
  emit(back, e.back);
  return out;
}

// ---------------------------------------------------------------------------
// History store

HistoryStore::HistoryStore(fs::path log_path) : path_(std::move(log_path)) {
  auto entries = std::make_shared<std::map<std::string, HistoryEntry>>();
  if (!path_.parent_path().empty()) fs::create_directories(path_.parent_path());

  std::string text;
  if (fs::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw IoError("cannot read history log " + path_.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  bool needs_newline = false;
  std::size_t keep = text.size();
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    const bool last_unterminated = nl == std::string::npos;
    const std::string line = text.substr(pos, last_unterminated ? std::string::npos : nl - pos);
    const std::size_t line_start = pos;
    pos = last_unterminated ? text.size() : nl + 1;
    if (line.empty()) continue;
    try {
      HistoryEntry e = entry_from_json(line);
      (*entries)[e.id] = std::move(e);
      if (last_unterminated) needs_newline = true;
    } catch (const ParseError& ex) {
      if (!last_unterminated) throw ParseError(line_no, std::string("history log: ") + ex.what());
      warnings_.push_back("history log: dropped torn record at line " + std::to_string(line_no));
      keep = line_start;
    }
  }

  fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError("cannot open history log " + path_.string() + ": " + std::strerror(errno));
  if (keep < text.size() && ::ftruncate(fd_, static_cast<off_t>(keep)) != 0)
    throw IoError("cannot truncate torn history record: " + std::string(std::strerror(errno)));
  if (needs_newline) append_line("");
  snap_ = std::move(entries);
}

HistoryStore::~HistoryStore() {
  if (fd_ >= 0) ::close(fd_);
}

void HistoryStore::append_line(const std::string& line) {
  const std::string data = line + "\n";
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd_, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("history append failed: " + std::string(std::strerror(errno)));
    }
    done += static_cast<std::size_t>(n);
  }
  ::fdatasync(fd_);
}

void HistoryStore::put(const HistoryEntry& e) {
  std::lock_guard lock(write_mu_);
  append_line(entry_to_json(e));
  auto next = std::make_shared<std::map<std::string, HistoryEntry>>(*std::atomic_load(&snap_));
  (*next)[e.id] = e;
  std::atomic_store(&snap_, Snapshot(std::move(next)));
}

std::optional<HistoryEntry> HistoryStore::update(const std::string& id,
                                                 const std::function<void(HistoryEntry&)>& mutate) {
  std::lock_guard lock(write_mu_);
  const Snapshot cur = std::atomic_load(&snap_);
  auto it = cur->find(id);
  if (it == cur->end()) return std::nullopt;
  HistoryEntry e = it->second;
  mutate(e);
  append_line(entry_to_json(e));
  auto next = std::make_shared<std::map<std::string, HistoryEntry>>(*cur);
  (*next)[id] = e;
  std::atomic_store(&snap_, Snapshot(std::move(next)));
  return e;
}

HistoryStore::Snapshot HistoryStore::snapshot() const { return std::atomic_load(&snap_); }

std::optional<HistoryEntry> HistoryStore::get(const std::string& id) const {
  const Snapshot s = snapshot();
  auto it = s->find(id);
  if (it == s->end()) return std::nullopt;
  return it->second;
}

std::vector<HistoryEntry> HistoryStore::list(std::size_t limit) const {
  const Snapshot s = snapshot();
  std::vector<HistoryEntry> out;
  for (auto it = s->rbegin(); it != s->rend() && out.size() < limit; ++it) out.push_back(it->second);
  return out;
}

std::string HistoryStore::state_json() const {
  json arr = json::array();
  for (const auto& [id, e] : *snapshot()) arr.push_back(entry_json(e));
  return arr.dump(2);
}

// ---------------------------------------------------------------------------
// Request handlers

namespace {

ApiResponse error_response(int status, std::string_view code, std::string_view message,
                           std::optional<Side> side = std::nullopt) {
  json j{{"code", code}, {"message", message}};
  if (side) j["side"] = std::string(to_string(*side));
  return {status, j.dump(), "application/json", {}};
}

ApiResponse json_response(const json& j, int status = 200) { return {status, j.dump(), "application/json", {}}; }

json summary_json(const HistoryEntry& e) {
  return {{"id", e.id},
          {"created_at", e.created_at},
          {"status", std::string(to_string(e.status))},
          {"edited_count", e.edited_fields.size()}};
}

// Serializes calls into ports that are not safe to share across threads.
class GuardedDetector : public extraction::DetectorPort {
 public:
  GuardedDetector(extraction::DetectorPort& inner, std::mutex& mu) : inner_(inner), mu_(mu) {}
  std::vector<Detection> detect(const extraction::DetectRequest& r) override {
    if (inner_.concurrent_safe()) return inner_.detect(r);
    std::lock_guard lock(mu_);
    return inner_.detect(r);
  }

 private:
  extraction::DetectorPort& inner_;
  std::mutex& mu_;
};

class GuardedOcr : public extraction::OcrPort {
 public:
  GuardedOcr(extraction::OcrPort& inner, std::mutex& mu) : inner_(inner), mu_(mu) {}
  extraction::OcrReading recognize(const extraction::OcrRequest& r) override {
    if (inner_.concurrent_safe()) return inner_.recognize(r);
    std::lock_guard lock(mu_);
    return inner_.recognize(r);
  }

 private:
  extraction::OcrPort& inner_;
  std::mutex& mu_;
};

}  // namespace

Service::Service(ServiceConfig cfg, std::unique_ptr<extraction::DetectorPort> detector,
                 std::unique_ptr<extraction::OcrPort> ocr)
    : cfg_(std::move(cfg)),
      detector_(std::move(detector)),
      ocr_(std::move(ocr)),
      history_(cfg_.history_path),
      ids_(cfg_.clock) {
  if (!detector_ || !ocr_) throw ConfigError("service needs both a detector and an OCR port");
  cfg_.pipeline.validate();
}

ExtractionResult Service::run_side(const ImageBuffer& img, Side side) {
  GuardedDetector det(*detector_, detector_mu_);
  GuardedOcr ocr(*ocr_, ocr_mu_);
  return extraction::extract_side(img, side, std::string(to_string(side)), {det, ocr}, cfg_.pipeline);
}

ApiResponse Service::extract(std::string_view body) {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error&) {
    return error_response(400, "bad_json", "request body is not valid JSON");
  }
  if (!req.is_object()) return error_response(400, "bad_json", "request body must be a JSON object");
  for (const char* key : {"front_image", "back_image"}) {
    if (!req.contains(key) || !req[key].is_string())
      return error_response(400, "missing_field", std::string("'") + key + "' must be a base64 string");
  }
  if (req.contains("request_id") && !req["request_id"].is_string())
    return error_response(400, "bad_request", "'request_id' must be a string");

  std::array<ImageBuffer, 2> images;
  const std::array<Side, 2> sides{Side::kFront, Side::kBack};
  for (int i = 0; i < 2; ++i) {
    const std::string key = i == 0 ? "front_image" : "back_image";
    const auto bytes = base64_decode(req[key].get_ref<const std::string&>());
    if (!bytes) return error_response(400, "bad_image", "'" + key + "' is not valid base64", sides[i]);
    try {
      images[i] = image_io::decode(*bytes);
    } catch (const Error&) {
      return error_response(400, "bad_image", "'" + key + "' is not a decodable PNG or JPEG image", sides[i]);
    }
  }

  HistoryEntry entry;
  for (int i = 0; i < 2; ++i) {
    try {
      (i == 0 ? entry.front : entry.back) = run_side(images[i], sides[i]);
    } catch (const NoCardFound& e) {
      return error_response(422, "no_card_found", e.what(), sides[i]);
    } catch (const DegenerateQuad& e) {
      return error_response(422, "no_card_found", e.what(), sides[i]);
    } catch (const PortError& e) {
      return error_response(502, "port_failure", e.what(), sides[i]);
    } catch (const Error& e) {
      return error_response(500, "internal", e.what(), sides[i]);
    }
  }

  const auto now = cfg_.clock ? cfg_.clock() : std::chrono::system_clock::now();
  entry.id = ids_.next();
  entry.created_at = format_utc(now);
  history_.put(entry);

  json warnings = json::array();
  for (const auto& w : entry.front.warnings) warnings.push_back("front: " + w);
  for (const auto& w : entry.back.warnings) warnings.push_back("back: " + w);
  return json_response({{"id", entry.id},
                        {"front", detail::result_to_json(entry.front)},
                        {"back", detail::result_to_json(entry.back)},
                        {"warnings", warnings}});
}

ApiResponse Service::patch_entry(const std::string& id, std::string_view body) {
  json edits;
  try {
    edits = json::parse(body);
  } catch (const json::parse_error&) {
    return error_response(400, "bad_json", "request body is not valid JSON");
  }
  if (!edits.is_object()) return error_response(400, "bad_json", "edits must be a JSON object of strings");
  if (!history_.get(id)) return error_response(404, "not_found", "no history entry '" + id + "'");
  std::map<std::string, std::string> parsed;
  for (const auto& [field, value] : edits.items()) {
    if (!cfg_.pipeline.schema_front.find(field) && !cfg_.pipeline.schema_back.find(field))
      return error_response(400, "unknown_field", "'" + field + "' is not a schema field");
    if (!value.is_string()) return error_response(400, "bad_request", "value for '" + field + "' must be a string");
    parsed[field] = value.get<std::string>();
  }
  const auto updated = history_.update(id, [&](HistoryEntry& e) {
    for (auto& [k, v] : parsed) e.edited_fields[k] = v;
    e.status = EntryStatus::kEdited;
  });
  if (!updated) return error_response(404, "not_found", "no history entry '" + id + "'");
  return json_response(entry_json(*updated));
}

ApiResponse Service::save_entry(const std::string& id) {
  const auto updated = history_.update(id, [](HistoryEntry& e) { e.status = EntryStatus::kSaved; });
  if (!updated) return error_response(404, "not_found", "no history entry '" + id + "'");
  ApiResponse r;
  r.body = render_text_document(*updated, cfg_.pipeline.schema_front, cfg_.pipeline.schema_back);
  r.content_type = "text/plain; charset=utf-8";
  r.headers.emplace_back("Content-Disposition", "attachment; filename=\"" + id + ".txt\"");
  return r;
}

ApiResponse Service::get_entry(const std::string& id) const {
  const auto e = history_.get(id);
  if (!e) return error_response(404, "not_found", "no history entry '" + id + "'");
  return json_response(entry_json(*e));
}

ApiResponse Service::list_entries(std::optional<std::string_view> limit) const {
  std::size_t n = 50;
  if (limit) {
    auto [ptr, ec] = std::from_chars(limit->data(), limit->data() + limit->size(), n);
    if (ec != std::errc() || ptr != limit->data() + limit->size())
      return error_response(400, "bad_request", "limit must be a non-negative integer");
  }
  json arr = json::array();
  for (const auto& e : history_.list(n)) arr.push_back(summary_json(e));
  return json_response(arr);
}

// ---------------------------------------------------------------------------
// HTTP wiring

struct Server::Impl {
  Service& service;
  httplib::Server http;
  explicit Impl(Service& s) : service(s) {}
};

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  for (const auto& [k, v] : api.headers) res.set_header(k, v);
  res.set_content(api.body, api.content_type);
}

}  // namespace

Server::Server(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& http = impl_->http;
  Service& svc = impl_->service;
  http.set_payload_max_length(svc.config().max_body_bytes);

  http.Post("/api/v1/extract",
            [&svc](const httplib::Request& req, httplib::Response& res) { send(res, svc.extract(req.body)); });
  http.Patch(R"(/api/v1/history/([0-9A-Za-z]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.patch_entry(req.matches[1], req.body));
  });
  http.Post(R"(/api/v1/history/([0-9A-Za-z]+)/save)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.save_entry(req.matches[1]));
  });
  http.Get(R"(/api/v1/history/([0-9A-Za-z]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.get_entry(req.matches[1]));
  });
  http.Get("/api/v1/history", [&svc](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string_view> limit;
    std::string raw;
    if (req.has_param("limit")) {
      raw = req.get_param_value("limit");
      limit = raw;
    }
    send(res, svc.list_entries(limit));
  });

  http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "unexpected error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, error_response(500, "internal", what));
  });
  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 404) send(res, error_response(404, "not_found", "no such route"));
    else if (res.status == 413) send(res, error_response(413, "payload_too_large", "request body too large"));
    else if (res.status >= 400) send(res, error_response(res.status, "bad_request", "request rejected"));
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Server::listen() {
  if (!impl_->http.listen_after_bind()) throw IoError("HTTP server stopped with an error");
}

void Server::stop() {
  if (impl_) impl_->http.stop();
}

// ---------------------------------------------------------------------------
// Environment

ServeSettings settings_from_env(ServeSettings base) {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = env("CARDEX_BIND")) base.bind = *v;
  if (auto v = env("CARDEX_PORT")) {
    int port = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), port);
    if (ec != std::errc() || ptr != v->data() + v->size() || port < 0 || port > 65535)
      throw ConfigError("CARDEX_PORT must be a port number");
    base.port = port;
  }
  if (auto v = env("CARDEX_CONFIG")) base.config = *v;
  if (auto v = env("CARDEX_LEXICON_DIR")) base.lexicon_dir = *v;
  if (auto v = env("CARDEX_HISTORY")) base.history = *v;
  if (auto v = env("CARDEX_FIXTURE_MODE")) base.fixture_mode = *v != "0" && *v != "false";
  if (auto v = env("CARDEX_FIXTURE_DETS")) base.fixture_dets = *v;
  if (auto v = env("CARDEX_OCR_TABLE")) base.ocr_table = *v;
  if (auto v = env("CARDEX_OCR_CMD")) base.ocr_command = *v;
  return base;
}

std::unique_ptr<Service> make_service(const ServeSettings& s) {
  ServiceConfig cfg;
  cfg.pipeline = s.config.empty()
                     ? extraction::default_pipeline_config(s.lexicon_dir.empty() ? fs::path("data/lexicons")
                                                                                  : s.lexicon_dir)
                     : extraction::load_pipeline_config(s.config, s.lexicon_dir);
  cfg.history_path = s.history;

  if (s.fixture_dets.empty())
    throw ConfigError("no detector configured: set CARDEX_FIXTURE_DETS to a detection dump");
  auto detector = std::make_unique<extraction::FixtureDetector>(extraction::FixtureDetector::from_file(s.fixture_dets));

  std::unique_ptr<extraction::OcrPort> ocr;
  const std::string command = s.ocr_command.empty() ? cfg.pipeline.ocr_command : s.ocr_command;
  if (s.fixture_mode || command.empty()) {
    if (s.ocr_table.empty()) throw ConfigError("no OCR configured: set CARDEX_OCR_TABLE or an OCR command");
    ocr = std::make_unique<extraction::StubOcr>(extraction::StubOcr::load_table(s.ocr_table));
  } else {
    ocr = std::make_unique<extraction::ExternalOcr>(command);
  }
  return std::make_unique<Service>(std::move(cfg), std::move(detector), std::move(ocr));
}

}  // namespace cardex::service
