// Copyright 2026 The bingham-moments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bingham {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the contracted domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation needs state (loaded tables, matching parameters) that is absent.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance within the recursion cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

enum class TableErrorKind : std::uint8_t {
  kIo,
  kTruncated,
  kBadMagic,
  kUnsupportedVersion,
  kInconsistentCounts,
  kChecksumMismatch,
  kInvalidConfig,
};

const char* to_string(TableErrorKind kind) noexcept;

/// Failure to generate, persist or load the precomputed tables.
class TableError : public Error {
 public:
  TableError(TableErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  TableErrorKind kind() const noexcept { return kind_; }

 private:
  TableErrorKind kind_;
};

}  // namespace bingham
