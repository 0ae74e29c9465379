// Copyright 2026 The Meanforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEANFORGE_CORE_ERRORS_HPP_
#define MEANFORGE_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meanforge {

/// Base class of every error raised by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (non-positive pair
/// member, weight outside [0,1], non-finite input, bad grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A textual mean specification, matrix file or flag could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::string token, const std::string& message)
      : Error(message), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// A file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue that must be positive was not (numerical breakdown).
class NonPositive : public Error {
 public:
  using Error::Error;
};

/// The fixed-point stabilizer hit its iteration cap.
class NonConvergence : public Error {
 public:
  NonConvergence(double last_residual, std::vector<double> history)
      : Error("fixed-point iteration did not converge; last residual " +
              std::to_string(last_residual)),
        last_residual_(last_residual),
        history_(std::move(history)) {}

  double last_residual() const { return last_residual_; }
  const std::vector<double>& history() const { return history_; }

 private:
  double last_residual_;
  std::vector<double> history_;
};

}  // namespace meanforge

#endif  // MEANFORGE_CORE_ERRORS_HPP_
