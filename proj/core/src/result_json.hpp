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

// nlohmann/json conversions shared by the extraction and service layers.
// Private to the library: public headers stay free of the JSON dependency.

#include "json.hpp"

#include "cardex/error.hpp"
#include "cardex/types.hpp"

namespace cardex::detail {

inline nlohmann::json field_to_json(const FieldValue& f) {
  nlohmann::json j{{"raw_text", f.raw_text},
                   {"corrected_text", f.corrected_text},
                   {"confidence", f.confidence},
                   {"correction_applied", f.correction_applied}};
  if (f.similarity) j["similarity"] = *f.similarity;
  return j;
}

inline nlohmann::json result_to_json(const ExtractionResult& r) {
  nlohmann::json fields = nlohmann::json::object();
  for (const auto& [name, value] : r.fields) fields[name] = field_to_json(value);
  return {{"side", std::string(to_string(r.side))}, {"fields", fields}, {"warnings", r.warnings}};
}

inline FieldValue field_from_json(const nlohmann::json& j) {
  FieldValue f;
  f.raw_text = j.at("raw_text").get<std::string>();
  f.corrected_text = j.at("corrected_text").get<std::string>();
  f.confidence = j.at("confidence").get<double>();
  f.correction_applied = j.at("correction_applied").get<bool>();
  if (j.contains("similarity")) f.similarity = j.at("similarity").get<double>();
  return f;
}

inline ExtractionResult result_from_json(const nlohmann::json& j) {
  try {
    ExtractionResult r;
    r.side = side_from_string(j.at("side").get<std::string>());
    for (const auto& [name, value] : j.at("fields").items()) r.fields[name] = field_from_json(value);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("extraction result JSON: ") + e.what());
  }
}

}  // namespace cardex::detail
