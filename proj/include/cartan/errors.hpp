// Copyright 2026 The cartan-skel Authors
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

#ifndef CARTAN_ERRORS_HPP
#define CARTAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cartan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or ambient dimensions that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A defining identity failed. `equation()` names it, e.g. "jacobi".
class InvariantError : public Error {
 public:
  InvariantError(std::string equation, const std::string& detail)
      : Error(equation + ": " + detail), equation_(std::move(equation)) {}
  const std::string& equation() const { return equation_; }

 private:
  std::string equation_;
};

/// Floating-point stage could not proceed (singular, not positive definite,
/// no convergence).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed problem description. `location()` is a JSON-pointer-like path.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& detail)
      : Error(location + ": " + detail), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace cartan

#endif  // CARTAN_ERRORS_HPP
