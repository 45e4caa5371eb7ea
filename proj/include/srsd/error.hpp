/*
 * Copyright (c) 2026 The srsd-bench Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SRSD_ERROR_HPP
#define SRSD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace srsd {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse = 2,
  DomainFault = 3,
  Decode = 4,
  Schema = 5,
  Io = 6,
  SamplingInfeasible = 7,
  Data = 8,
  NotFound = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

/// Infix syntax error; `position()` is the zero-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation left the real domain. `path()` names the offending subexpression as
/// child indices from the root, e.g. "/1/0".
class DomainFault : public Error {
 public:
  DomainFault(const std::string& what, std::string path)
      : Error(ErrorCode::DomainFault, what + " at " + (path.empty() ? std::string("/") : path)),
        path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what) : Error(ErrorCode::Decode, what) {}
};

/// Problem-spec file violates the schema; the message starts with the JSON field path.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& field_path, const std::string& what)
      : Error(ErrorCode::Schema, field_path + ": " + what), field_path_(field_path) {}
  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

class SamplingInfeasible : public Error {
 public:
  explicit SamplingInfeasible(const std::string& what) : Error(ErrorCode::SamplingInfeasible, what) {}
};

/// Malformed data file or inconsistent data; carries the 1-based line when known.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : Error(ErrorCode::Data, line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(ErrorCode::NotFound, what) {}
};

}  // namespace srsd

#endif  // SRSD_ERROR_HPP
