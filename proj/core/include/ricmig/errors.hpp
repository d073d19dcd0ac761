// Copyright 2026 The ricmig Authors
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

#ifndef RICMIG_ERRORS_HPP
#define RICMIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ricmig {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient was requested that no calibration entry (exact or wildcard) covers.
class CalibrationLookupError : public Error {
 public:
  using Error::Error;
};

/// A calibration document failed schema or invariant checks.
class CalibrationLoadError : public Error {
 public:
  using Error::Error;
};

/// A model was evaluated outside its domain (e.g. migration window longer than the slot).
class ModelDomainError : public Error {
 public:
  using Error::Error;
};

/// Cluster state inconsistent with the requested operation.
class StateError : public Error {
 public:
  using Error::Error;
};

class BuildError : public Error {
 public:
  using Error::Error;
};

class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

/// Brute-force search refused because the plan space exceeds the configured cap.
class SearchSpaceError : public Error {
 public:
  SearchSpaceError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Scenario, plan, sweep or measurement file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ricmig

#endif  // RICMIG_ERRORS_HPP
