// Copyright 2026 The cqwiretap Authors

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
 * Exception hierarchy shared by all modules. The command-line runner maps
 * each family onto a stable exit code.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cqw {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operator is not Hermitian, not PSD, or has the wrong trace.
class InvalidStateError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A configured size cap (dimension, enumeration, search) would be exceeded.
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// Structured input failed a combinatorial or consistency check.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Input file could not be parsed or lacks required fields.
class ParseError : public Error {
  public:
    using Error::Error;
};

/**
 * A constructed candidate failed its certification gate. Carries the
 * measured quantity so callers can report it.
 */
class ConstructionUnverifiedError : public Error {
  public:
    ConstructionUnverifiedError(const std::string &what, double measured)
        : Error(what), measured_(measured) {}

    [[nodiscard]] double measured() const noexcept { return measured_; }

  private:
    double measured_;
};

} // namespace cqw
