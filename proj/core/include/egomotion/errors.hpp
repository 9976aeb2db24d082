// Copyright 2026 The egomotion Authors
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

#ifndef EGOMOTION_ERRORS_HPP_
#define EGOMOTION_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace egomotion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  /// Short machine-readable category, e.g. "horizon" or "singular_system".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A homogeneous denominator vanished: the point maps to infinity.
class HorizonError : public Error {
 public:
  explicit HorizonError(const std::string& what) : Error("horizon", what) {}
};

/// A projective matrix is (numerically) singular.
class DegenerateMapError : public Error {
 public:
  explicit DegenerateMapError(const std::string& what)
      : Error("degenerate_map", what) {}
};

/// An argument lies outside the domain of the operation (e.g. depth <= 0).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A documented precondition (hypothesis, validity condition) does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error("precondition", what) {}
};

/// Invalid configuration: intrinsics, estimator settings, CLI arguments.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

/// The weighted normal equations are rank deficient.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what)
      : Error("singular_system", what) {}
};

/// Every robust weight vanished; nothing is left to fit.
class EmptySupportError : public Error {
 public:
  explicit EmptySupportError(const std::string& what)
      : Error("empty_support", what) {}
};

/// Image file could not be parsed or written.
class ImageFormatError : public Error {
 public:
  explicit ImageFormatError(const std::string& what)
      : Error("image_format", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace egomotion

#endif  // EGOMOTION_ERRORS_HPP_
