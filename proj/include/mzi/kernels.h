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

#ifndef MZI_KERNELS_H
#define MZI_KERNELS_H

#include <cstdint>
#include <span>
#include <vector>

#include "mzi/drift.h"
#include "mzi/measurements.h"

namespace mzi {

/// Execution::serial is the reference path; Execution::parallel spreads
/// independent points over OpenMP threads. Both return identical values in
/// grid order.
enum class Execution { serial, parallel };

/// Delta^2 phi at each phase for a scheme whose port is already resolved.
/// Stationary points yield +infinity.
std::vector<double> phase_curve(
    const MziConfig &base, const MeasurementScheme &scheme, std::span<const double> phis, Execution exec);

/// Optimal phase variance at each |alpha|^2. Ports are resolved per point.
std::vector<PhaseSensitivity> power_curve(
    const MziConfig &base, const MeasurementScheme &scheme, std::span<const double> alpha_sq, Execution exec);

/// One drift series per seed, all centred on the same optimum.
std::vector<DriftSeries> drift_ensemble(
    const DriftConfig &base, std::span<const uint64_t> seeds, Execution exec);

}  // namespace mzi

#endif
