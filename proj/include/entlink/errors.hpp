// Copyright 2026 The Entlink Authors
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

#ifndef ENTLINK_ERRORS_HPP_
#define ENTLINK_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entlink {

// Base class for all recoverable entlink failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (dump, corpus, NIF). Carries a 1-based line
// number when one is known; 0 means "not line addressable".
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? message + " (line " + std::to_string(line) + ")" : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input that parses but violates a data invariant (duplicate titles,
// redirect cycles).
class ConflictError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure while reading or writing an artifact.
class IoError : public Error {
 public:
  using Error::Error;
};

// Snapshot file carries a format_version this build does not support.
class SnapshotVersionError : public Error {
 public:
  using Error::Error;
};

// Snapshot file is structurally damaged or fails its checksum.
class SnapshotCorruptionError : public Error {
 public:
  using Error::Error;
};

// Caller-side contract violation (precondition breach); a programming
// error rather than bad data, hence logic_error.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace entlink

#endif  // ENTLINK_ERRORS_HPP_
