// Copyright 2026 The Authors.
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

#ifndef SENSEL_ERRORS_HPP
#define SENSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sensel {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix/vector shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied configuration (budgets, horizons, modes, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A requested computation exceeds an explicit size/enumeration cap.
class SizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// An operation was called with arguments outside its stated preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An instance is too degenerate for the requested statistic to be defined.
class DegenerateInstanceError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating input documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, int iterations = 0)
      : Error(what), iterations(iterations) {}
  int iterations;
};

/// A matrix required to be positive definite was (numerically) singular.
class SingularityError : public NumericalError {
 public:
  SingularityError(const std::string& what, double lambda_min)
      : NumericalError(what), lambda_min(lambda_min) {}
  double lambda_min;
};

}  // namespace sensel

#endif  // SENSEL_ERRORS_HPP
