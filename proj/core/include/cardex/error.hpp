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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cardex {

enum class ErrorKind {
  kDegenerateBox,
  kInvalidDomain,
  kInvalidParameter,
  kDegenerateQuad,
  kParse,
  kConfig,
  kShape,
  kRange,
  kDate,
  kNoCardFound,
  kPort,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// Base of every exception thrown by the library. Callers that only care
// about the category switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DegenerateBox : public Error {
 public:
  explicit DegenerateBox(const std::string& m) : Error(ErrorKind::kDegenerateBox, m) {}
};

class InvalidDomain : public Error {
 public:
  explicit InvalidDomain(const std::string& m) : Error(ErrorKind::kInvalidDomain, m) {}
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& m)
      : Error(ErrorKind::kInvalidParameter, m) {}
};

class DegenerateQuad : public Error {
 public:
  explicit DegenerateQuad(const std::string& m) : Error(ErrorKind::kDegenerateQuad, m) {}
};

// Line numbers are 1-based; 0 means "not tied to a line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& m)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + m), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error(ErrorKind::kConfig, m) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& m) : Error(ErrorKind::kShape, m) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& m) : Error(ErrorKind::kRange, m) {}
};

class DateError : public Error {
 public:
  explicit DateError(std::string raw)
      : Error(ErrorKind::kDate, "unparseable date: '" + raw + "'"), raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

class NoCardFound : public Error {
 public:
  explicit NoCardFound(const std::string& m) : Error(ErrorKind::kNoCardFound, m) {}
};

class PortError : public Error {
 public:
  explicit PortError(const std::string& m) : Error(ErrorKind::kPort, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::kIo, m) {}
};

}  // namespace cardex
