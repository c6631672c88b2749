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

#include "mzi/bounds.h"

#include <cmath>
#include <stdexcept>

#include "mzi/errors.h"

namespace mzi {

namespace {

void check_inputs(double alpha_sq, double r) {
    if (!(alpha_sq >= 0.0) || !(r >= 0.0) || !std::isfinite(alpha_sq) || !std::isfinite(r)) {
        throw std::invalid_argument("alpha_sq and r must be finite and non-negative");
    }
    if (alpha_sq == 0.0 && r == 0.0) {
        throw std::invalid_argument("no photons enter the interferometer");
    }
}

void check_loss(double loss) {
    if (!(loss >= 0.0 && loss < 1.0)) {
        throw std::invalid_argument("loss must lie in [0, 1)");
    }
}

double sinh_sq(double r) {
    const double s = std::sinh(r);
    return s * s;
}

}  // namespace

double snl(double alpha_sq, double r) {
    check_inputs(alpha_sq, r);
    return 1.0 / (alpha_sq + sinh_sq(r));
}

double qcrb_lossless(double alpha_sq, double r) {
    check_inputs(alpha_sq, r);
    return 1.0 / (alpha_sq * std::exp(2 * r) + sinh_sq(r));
}

double qcrb_lossy(double alpha_sq, double r, double loss) {
    check_inputs(alpha_sq, r);
    check_loss(loss);
    const double e2r = std::exp(2 * r);
    const double g = loss * (e2r - 1.0) + 1.0;
    return g / ((1.0 - loss) * (alpha_sq * e2r + sinh_sq(r) * g));
}

double closed_form_variance(const MeasurementScheme &scheme, double alpha_sq, double r, double loss) {
    check_inputs(alpha_sq, r);
    check_loss(loss);
    const double e2r = std::exp(2 * r);
    if (std::holds_alternative<Homodyne>(scheme)) {
        const auto &h = std::get<Homodyne>(scheme);
        if (h.angle != 0.0 || h.mode != 1) {
            throw UnsupportedCombinationError("closed form exists only for the x quadrature of port 1");
        }
        if (alpha_sq == 0.0) {
            throw std::invalid_argument("homodyne carries no phase signal without coherent light");
        }
        return 1.0 / (alpha_sq * e2r) + loss / (alpha_sq * (1.0 - loss));
    }
    if (loss != 0.0) {
        throw UnsupportedCombinationError("no closed form for " + scheme_name(scheme) + " with loss");
    }
    if (std::holds_alternative<Parity>(scheme)) {
        return qcrb_lossless(alpha_sq, r);
    }
    const double alpha = std::sqrt(alpha_sq);
    const double denom_root = std::cosh(2 * r) - 2.0 * alpha_sq - 1.0;
    const double denom = denom_root * denom_root;
    if (std::holds_alternative<IntensityDifference>(scheme)) {
        const double e2r_m1 = e2r - 1.0;
        return (4.0 * alpha_sq + e2r_m1 * e2r_m1) / e2r / denom;
    }
    // Single-port intensity.
    return (4.0 * alpha_sq / e2r + 2.0 * std::cosh(2 * r) + 4.0 * std::sqrt(2.0) * alpha * std::sinh(2 * r) - 2.0) /
           denom;
}

double photons_from_power(double power, double omega0) {
    if (!(power > 0.0) || !(omega0 > 0.0) || !std::isfinite(power) || !std::isfinite(omega0)) {
        throw std::invalid_argument("power and frequency must be positive");
    }
    return power / (kHbarSI * omega0);
}

BoundReport bound_report(double alpha_sq, double r, double loss) {
    BoundReport report{snl(alpha_sq, r), qcrb_lossy(alpha_sq, r, loss), {}};
    const MeasurementScheme schemes[] = {Intensity{}, IntensityDifference{}, Homodyne{}, Parity{}};
    for (const auto &scheme : schemes) {
        try {
            report.closed_forms[scheme_name(scheme)] = closed_form_variance(scheme, alpha_sq, r, loss);
        } catch (const std::invalid_argument &) {
            // No closed form at this (scheme, loss, alpha) point.
        }
    }
    return report;
}

}  // namespace mzi
