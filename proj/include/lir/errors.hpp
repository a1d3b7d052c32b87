// Copyright 2026 The lir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lir {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyReference : public Error {
 public:
  EmptyReference() : Error("reference has no tokens after normalization") {}
};

class LanguageMismatch : public Error {
 public:
  using Error::Error;
};

class SteppedTerminated : public Error {
 public:
  SteppedTerminated() : Error("step() called on a machine already in End") {}
};

class EmptyTranscript : public Error {
 public:
  EmptyTranscript() : Error("transcript is empty") {}
};

/// Transport failure after the retry budget is spent.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

/// A backend reply that cannot be turned into a transcript.
class MalformedResponse : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

/// A corpus line that does not satisfy the record contract.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::size_t line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class MissingNBest : public Error {
 public:
  using Error::Error;
};

class MissingReference : public Error {
 public:
  using Error::Error;
};

}  // namespace lir
