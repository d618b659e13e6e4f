// Copyright 2026 The wefpe Authors.
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

#include <stdexcept>
#include <string>

namespace wefpe {

// Invalid lattice / encoding configuration (bad discriminant, non-positive
// periods, unknown config keys, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Precondition violation on an operation argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two grids or buffers whose shapes must agree do not.
class ShapeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Addition formula requested for z1 ≡ z2 (mod lattice), where ℘(z1) = ℘(z2).
class DegeneratePairError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation point lands on (or within the pole radius of) a lattice point.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Correlation of a constant series.
class UndefinedCorrelationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientDataError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Cosine similarity requested for a zero-norm row.
class DegenerateRowError : public std::domain_error {
 public:
  DegenerateRowError(std::size_t row, const std::string& what)
      : std::domain_error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wefpe
