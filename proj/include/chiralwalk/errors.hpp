// Copyright 2026 The Chiralwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace chiralwalk {

/// Rejected input: bad vertex count, non-finite phase, out-of-range index,
/// non-normalized state. Maps to CLI exit code 2.
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: eigensolver breakdown, root bracketing failure,
/// pole-adjacent evaluation. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A walk eigenvalue vanishes at the requested phase, so the spectral sums
/// (and the critical jumping rate derived from them) diverge.
class CriticalThetaError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The secular root finder could not establish a sign change inside an
/// interval between poles.
class BracketingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The secular function was evaluated too close to one of its poles.
class PoleEvaluationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// File output failure. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chiralwalk
