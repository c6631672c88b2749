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

#ifndef MZI_MEASUREMENTS_H
#define MZI_MEASUREMENTS_H

#include <optional>
#include <string>
#include <variant>

#include "mzi/gaussian_state.h"
#include "mzi/interferometer.h"

namespace mzi {

// Output-port indices are 1-based. An empty port means "pick the port with
// the smaller optimal phase variance" and is resolved by resolve_port().

/// Photon number a^dagger a on one output port.
struct Intensity {
    std::optional<int> mode;
};

/// Photon-number difference n1 - n2 between the two output ports.
struct IntensityDifference {};

/// Ideal quadrature read-out cos(angle) x + sin(angle) p of one port.
struct Homodyne {
    int mode = 1;
    double angle = 0.0;
};

/// Photon-number parity (-1)^n of one port.
struct Parity {
    std::optional<int> mode;
};

using MeasurementScheme = std::variant<Intensity, IntensityDifference, Homodyne, Parity>;

/// Short name: "intensity", "intensity-difference", "homodyne", "parity",
/// with ":<port>" appended when a port is set (homodyne always carries one).
std::string scheme_name(const MeasurementScheme &scheme);

/// Inverse of scheme_name; also accepts "diff" and "homodyne:<port>:<angle>".
MeasurementScheme parse_scheme(const std::string &text);

bool port_resolved(const MeasurementScheme &scheme);

/// <O> on the state. Intensity -> mean photons; IntensityDifference -> n1 - n2;
/// Homodyne -> mean quadrature; Parity -> pi W_mode(0, 0).
double expectation(const GaussianState &state, const MeasurementScheme &scheme);

/// <O^2> - <O>^2, with Wigner averages converted to operator moments.
double variance(const GaussianState &state, const MeasurementScheme &scheme);

/// Exact d<O>/dphi from the propagated state derivatives.
double expectation_derivative(const StateWithDerivative &output, const MeasurementScheme &scheme);

struct PhaseSensitivity {
    /// Delta^2 phi = Var(O) / |d<O>/dphi|^2 in rad^2.
    double variance;
    double at_phase;
    MeasurementScheme scheme;
};

/// Delta^2 phi at an already-propagated output. Throws StationaryPointError
/// when |d<O>/dphi| < 1e-12 * max(1, sqrt(<O^2>)).
double phase_variance_at(const StateWithDerivative &output, const MeasurementScheme &scheme);

/// Delta^2 phi at config.phi. Unset ports are resolved first.
PhaseSensitivity phase_variance(const MziConfig &config, const MeasurementScheme &scheme);

/// Minimizes phase_variance over phi in [0, 2 pi): 1024-point grid, then
/// golden-section refinement to a bracket of 1e-10. Unset ports are resolved
/// first. Throws DegenerateConfigurationError if every grid point is stationary.
PhaseSensitivity optimal_phase(const MziConfig &config, const MeasurementScheme &scheme);

/// Fills an unset port with whichever output port attains the smaller optimal
/// phase variance (port 1 on ties). Schemes with fixed ports pass through.
MeasurementScheme resolve_port(const MziConfig &config, const MeasurementScheme &scheme);

}  // namespace mzi

#endif
