// Copyright 2026 The mzisim Authors
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

#ifndef MZI_ERRORS_H
#define MZI_ERRORS_H

#include <stdexcept>
#include <string>

namespace mzi {

// Argument validation failures use std::invalid_argument directly. The types
// below mark numerical conditions a caller may want to handle separately.

/// A covariance matrix is singular or otherwise outside the numeric domain.
struct NumericalDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A Gaussian moment of total degree above 4 was requested.
struct UnsupportedOrderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The observable's phase derivative vanishes, so the phase variance is undefined.
struct StationaryPointError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Every phase on the search grid is stationary for the requested scheme.
struct DegenerateConfigurationError : std::domain_error {
    using std::domain_error::domain_error;
};

/// No closed form exists for the requested (scheme, loss) pair.
struct UnsupportedCombinationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace mzi

#endif
