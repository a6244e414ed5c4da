// SPDX-License-Identifier: Apache-2.0
//
// blindia - blind interference alignment for the reconfigurable-antenna MISO downlink
// Copyright (C) 2026 the blindia authors
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

#ifndef BLINDIA_ERRORS_HPP
#define BLINDIA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blindia {

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Matrix input rejected: non-finite entries, empty dimensions, or a matrix
// that fails a structural precondition (e.g. Hermitian symmetry).
struct InvalidMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Orthonormal-complement request on a subspace with no complement left.
struct DegenerateSubspace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// System configuration outside the supported range (fewer than two antenna
// modes, nonpositive user count, supersymbol length over the cap, ...).
struct UnsupportedConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mode schedule that violates the switching-pattern contract.
struct InvalidPattern : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure while assembling receiver-side structures.
struct ConstructionError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace blindia

#endif
