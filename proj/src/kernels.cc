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

#include "mzi/kernels.h"

#include <cstddef>
#include <exception>
#include <limits>

#include "mzi/errors.h"

namespace mzi {

namespace {

// Runs body(i) for i in [0, n). Exceptions from worker threads are captured
// and the one from the lowest index is rethrown, matching the serial path.
template <class Body>
void for_each_index(size_t n, Execution exec, Body &&body) {
    if (exec == Execution::serial) {
        for (size_t i = 0; i < n; i++) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; i++) {
        try {
            body(static_cast<size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

std::vector<double> phase_curve(
    const MziConfig &base, const MeasurementScheme &scheme, std::span<const double> phis, Execution exec) {
    base.validate();
    if (!port_resolved(scheme)) {
        throw std::invalid_argument("phase_curve needs a resolved port");
    }
    std::vector<double> out(phis.size());
    for_each_index(phis.size(), exec, [&](size_t i) {
        try {
            out[i] = phase_variance_at(mzi_output(base.with_phi(phis[i])), scheme);
        } catch (const StationaryPointError &) {
            out[i] = std::numeric_limits<double>::infinity();
        }
    });
    return out;
}

std::vector<PhaseSensitivity> power_curve(
    const MziConfig &base, const MeasurementScheme &scheme, std::span<const double> alpha_sq, Execution exec) {
    std::vector<PhaseSensitivity> out(alpha_sq.size());
    for_each_index(alpha_sq.size(), exec, [&](size_t i) {
        MziConfig config = base;
        config.alpha_sq = alpha_sq[i];
        out[i] = optimal_phase(config, scheme);
    });
    return out;
}

std::vector<DriftSeries> drift_ensemble(
    const DriftConfig &base, std::span<const uint64_t> seeds, Execution exec) {
    base.validate();
    const PhaseSensitivity optimum = optimal_phase(base.base, base.scheme);
    std::vector<DriftSeries> out(seeds.size());
    for_each_index(seeds.size(), exec, [&](size_t i) {
        DriftConfig config = base;
        config.seed = seeds[i];
        out[i] = running_average(config, optimum);
    });
    return out;
}

}  // namespace mzi
