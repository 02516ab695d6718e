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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cardex/extraction.hpp"
#include "cardex/types.hpp"

namespace cardex::service {

// Strict RFC 4648 base64 (standard alphabet, padded). ASCII whitespace in the
// input is ignored. Returns nullopt for anything else that is malformed.
std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text);
std::string base64_encode(std::span<const std::uint8_t> bytes);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

using Clock = std::function<std::chrono::system_clock::time_point()>;

// Crockford base32, 26 characters: 48-bit millisecond timestamp then 80 random
// bits. Ids from one generator are strictly increasing, including within the
// same millisecond.
class UlidGenerator {
 public:
  explicit UlidGenerator(Clock clock = {}, std::uint64_t seed = std::random_device{}());
  std::string next();

 private:
  Clock clock_;
  std::mutex mu_;
  std::mt19937_64 rng_;
  std::uint64_t last_ms_ = 0;
  std::uint16_t hi_ = 0;  // upper 16 of the 80 random bits
  std::uint64_t lo_ = 0;  // lower 64
};

std::string format_utc(std::chrono::system_clock::time_point t);

enum class EntryStatus { kExtracted, kEdited, kSaved };
std::string_view to_string(EntryStatus s) noexcept;
EntryStatus status_from_string(std::string_view s);

struct HistoryEntry {
  std::string id;
  std::string created_at;
  ExtractionResult front;
  ExtractionResult back;
  std::map<std::string, std::string> edited_fields;
  EntryStatus status = EntryStatus::kExtracted;

  bool operator==(const HistoryEntry&) const = default;
};

std::string entry_to_json(const HistoryEntry& e, int indent = -1);
HistoryEntry entry_from_json(std::string_view text);

// "field: value" per line in schema order (front, then back); edits win.
std::string render_text_document(const HistoryEntry& e, const CategorySchema& front, const CategorySchema& back);

// Append-only JSON-lines log. Every change appends the full entry; on open the
// log is replayed and the last record per id wins. A torn final line (crash
// mid-write) is skipped and reported through warnings().
class HistoryStore {
 public:
  using Snapshot = std::shared_ptr<const std::map<std::string, HistoryEntry>>;

  explicit HistoryStore(std::filesystem::path log_path);
  ~HistoryStore();
  HistoryStore(const HistoryStore&) = delete;
  HistoryStore& operator=(const HistoryStore&) = delete;

  // Writes one line and publishes a new snapshot. Serialized across threads.
  void put(const HistoryEntry& e);
  // Applies `mutate` to the current entry under the writer lock and persists the
  // result. Returns nullopt when the id is unknown.
  std::optional<HistoryEntry> update(const std::string& id, const std::function<void(HistoryEntry&)>& mutate);

  // Lock-free reads against the latest published snapshot.
  Snapshot snapshot() const;
  std::optional<HistoryEntry> get(const std::string& id) const;
  // Newest first.
  std::vector<HistoryEntry> list(std::size_t limit) const;
  // Canonical dump of the whole in-memory state, for replay comparisons.
  std::string state_json() const;

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  void append_line(const std::string& line);

  std::filesystem::path path_;
  int fd_ = -1;
  std::mutex write_mu_;
  Snapshot snap_;
  std::vector<std::string> warnings_;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::vector<std::pair<std::string, std::string>> headers;
};

struct ServiceConfig {
  extraction::PipelineConfig pipeline;
  std::filesystem::path history_path = "cardex-history.jsonl";
  Clock clock;
  std::size_t max_body_bytes = 64u << 20;
};

// Request handlers are usable without a socket; Server wires them to HTTP.
class Service {
 public:
  Service(ServiceConfig cfg, std::unique_ptr<extraction::DetectorPort> detector,
          std::unique_ptr<extraction::OcrPort> ocr);

  ApiResponse extract(std::string_view body);
  ApiResponse patch_entry(const std::string& id, std::string_view body);
  ApiResponse save_entry(const std::string& id);
  ApiResponse get_entry(const std::string& id) const;
  ApiResponse list_entries(std::optional<std::string_view> limit) const;

  HistoryStore& history() noexcept { return history_; }
  const ServiceConfig& config() const noexcept { return cfg_; }

 private:
  ExtractionResult run_side(const ImageBuffer& img, Side side);

  ServiceConfig cfg_;
  std::unique_ptr<extraction::DetectorPort> detector_;
  std::unique_ptr<extraction::OcrPort> ocr_;
  std::mutex detector_mu_;
  std::mutex ocr_mu_;
  HistoryStore history_;
  UlidGenerator ids_;
};

class Server {
 public:
  explicit Server(Service& service);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Port 0 binds an ephemeral port. Returns the bound port; throws IoError.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Settings read from CARDEX_BIND, CARDEX_PORT, CARDEX_CONFIG, CARDEX_LEXICON_DIR,
// CARDEX_HISTORY, CARDEX_FIXTURE_MODE, CARDEX_FIXTURE_DETS, CARDEX_OCR_TABLE and
// CARDEX_OCR_CMD. Unset variables keep these defaults.
struct ServeSettings {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::filesystem::path config;
  // Empty: the config file's directory, or data/lexicons without a config.
  std::filesystem::path lexicon_dir;
  std::filesystem::path history = "cardex-history.jsonl";
  bool fixture_mode = false;
  std::filesystem::path fixture_dets;
  std::filesystem::path ocr_table;
  std::string ocr_command;
};

ServeSettings settings_from_env(ServeSettings base = {});
std::unique_ptr<Service> make_service(const ServeSettings& s);

}  // namespace cardex::service
