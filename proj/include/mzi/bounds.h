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

#ifndef MZI_BOUNDS_H
#define MZI_BOUNDS_H

#include <map>
#include <string>

#include "mzi/measurements.h"

namespace mzi {

/// Reduced Planck constant (CODATA 2018), J s. Used only for power conversion.
inline constexpr double kHbarSI = 1.054571817e-34;

/// Shot-noise limit 1 / (|alpha|^2 + sinh^2 r).
double snl(double alpha_sq, double r);

/// Lossless quantum Cramer-Rao bound 1 / (|alpha|^2 e^{2r} + sinh^2 r).
double qcrb_lossless(double alpha_sq, double r);

/// Quantum Cramer-Rao bound with linear loss L in [0, 1):
///   (L(e^{2r}-1)+1) / ((1-L) {|alpha|^2 e^{2r} + sinh^2 r [L(e^{2r}-1)+1]}).
double qcrb_lossy(double alpha_sq, double r, double loss);

/// Closed-form phase variance of a scheme at its optimal phase. Intensity,
/// intensity difference and parity are available only without loss; homodyne
/// (x quadrature) for any L < 1. Other pairs throw UnsupportedCombinationError.
double closed_form_variance(const MeasurementScheme &scheme, double alpha_sq, double r, double loss);

/// Mean coherent photon number P / (hbar omega0) for a beam of power P (W)
/// at angular frequency omega0 (rad/s).
double photons_from_power(double power, double omega0);

struct BoundReport {
    double snl;
    double qcrb;
    /// Keyed by scheme_name(); only schemes with a closed form at this loss.
    std::map<std::string, double> closed_forms;
};

BoundReport bound_report(double alpha_sq, double r, double loss);

}  // namespace mzi

#endif
