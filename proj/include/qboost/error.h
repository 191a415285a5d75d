// Copyright 2026 The qboost Authors
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

#ifndef QBOOST_ERROR_H
#define QBOOST_ERROR_H

#include <stdexcept>
#include <string>

namespace qboost {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inputs rejected before any work happens (bad ranges, infeasible parameters).
struct ParameterError : Error {
    using Error::Error;
};

/// Derived configuration is unusable (e.g. loop bound beyond the guard).
struct ConfigError : ParameterError {
    using ParameterError::ParameterError;
};

/// Problem size exceeds what a dense simulation can hold.
struct ResourceError : Error {
    using Error::Error;
};

/// A caller broke an operation's precondition.
struct ContractViolation : Error {
    using Error::Error;
};

/// Post-selection did not succeed within the attempt cap.
struct PostSelectionFailure : Error {
    using Error::Error;
};

/// Residual norm is numerically zero.
struct DegenerateResidual : Error {
    using Error::Error;
};

/// Reference coefficient estimate is below the promised floor.
struct PromiseViolation : Error {
    using Error::Error;
};

/// Weak-learner threshold is too small to be meaningful for this n.
struct ThresholdDegenerate : Error {
    using Error::Error;
};

}  // namespace qboost

#endif
