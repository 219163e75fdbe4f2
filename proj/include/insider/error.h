// Copyright 2026 The insider-graph Authors
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

#ifndef INSIDER_ERROR_H_
#define INSIDER_ERROR_H_

#include <stdexcept>
#include <string>

namespace insider {

// Base class for every failure the library reports. Callers that only need
// a diagnostic can catch this; the subclasses exist so the CLI can map
// failure classes to distinct messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file has a header layout we cannot map onto the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Inputs are inconsistent with each other (unknown user, bad alignment, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its documented range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A file or directory a stage depends on does not exist.
class MissingInputError : public Error {
 public:
  using Error::Error;
};

// The exact enumerator was asked to run on a graph larger than its bound.
class OracleBoundError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace insider

#endif  // INSIDER_ERROR_H_
