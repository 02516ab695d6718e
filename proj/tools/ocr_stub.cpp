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

// Stand-in OCR engine for the external-command port: looks the field up in a
// table and prints "text<TAB>confidence". The image argument is accepted and
// only checked for existence.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "cardex/error.hpp"
#include "cardex/extraction.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cardex_ocr_stub: table-driven OCR stand-in"};
  std::filesystem::path table;
  std::filesystem::path image;
  std::string field;
  std::string lang;
  app.add_option("--table", table, "field<TAB>text[<TAB>conf] table")->required()->check(CLI::ExistingFile);
  app.add_option("--field", field, "Field name")->required();
  app.add_option("--image", image, "Crop image")->check(CLI::ExistingFile);
  app.add_option("--lang", lang, "Language code (ignored)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    const auto entries = cardex::extraction::StubOcr::load_table(table);
    const auto it = entries.find(field);
    if (it == entries.end()) {
      std::cout << "\t0\n";
      return 0;
    }
    std::cout << it->second.text << '\t' << it->second.confidence << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
