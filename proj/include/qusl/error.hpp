// Copyright 2026 The QUSL Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared across the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qusl {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or truncated input data (dataset files, caches).
class FormatError : public Error {
  public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Operands with incompatible shapes or qubit counts.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Payload does not fit the available qubit register.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Attempt to normalize a zero vector.
class NormalizationError : public Error {
  public:
    using Error::Error;
};

/// Qubit or element index outside the valid range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// Invalid argument values (empty batches, constant series, ...).
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// Text parse failure; the message carries the line number.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Configuration value rejected; carries the offending key.
class ConfigError : public Error {
  public:
    ConfigError(std::string key, const std::string &what)
        : Error(key + ": " + what), key_(std::move(key)) {}

    [[nodiscard]] const std::string &key() const noexcept { return key_; }

  private:
    std::string key_;
};

/// Checkpoint file missing, corrupt or from an incompatible version.
class CheckpointError : public Error {
  public:
    using Error::Error;
};

} // namespace qusl
