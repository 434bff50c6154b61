// Copyright 2026 The bellkit Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace bellkit {

/// Bad arguments, malformed files, or quantities outside their domain.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A state whose in-plane outcome probabilities leave [0, 1].
class UnphysicalStateError : public InputError {
  public:
    using InputError::InputError;
};

/// Solver or optimizer failure.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// LP without a feasible point.
class InfeasibleError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// LP whose objective grows without limit.
class UnboundedError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// A count set that does not cover every term an estimator needs.
class IncompleteDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace bellkit
