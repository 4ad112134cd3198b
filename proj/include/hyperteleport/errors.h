// Copyright 2026 The hyperteleport Authors
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

#ifndef HYPERTELEPORT_ERRORS_H
#define HYPERTELEPORT_ERRORS_H

#include <stdexcept>
#include <string>

namespace hyperteleport {

/// Bad caller input (unnormalized message, bad label, zero shots, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Qubit count outside the supported range.
struct SizeError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// Gate refers to a qubit that does not exist or uses one twice.
struct GateError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// Malformed hypergraph.
struct ModelError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// Correction table has no row for the given outcome.
struct LookupError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// Incomplete or inconsistent measurement data, malformed files.
struct InputError : ArgumentError {
    using ArgumentError::ArgumentError;
};

/// An internal invariant did not hold. Indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace hyperteleport

#endif
