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

#ifndef MZI_DRIFT_H
#define MZI_DRIFT_H

#include <cstdint>
#include <random>
#include <vector>

#include "mzi/measurements.h"

namespace mzi {

/// Control-phase jitter around a scheme's optimal operating point.
struct DriftConfig {
    MziConfig base{.alpha_sq = 100.0, .r = 1.0};
    MeasurementScheme scheme = Homodyne{};
    /// Standard deviation of the Gaussian phase jitter, radians.
    double sigma_drift = 0.15;
    int m_max = 200;
    uint64_t seed = 1;

    void validate() const;
};

/// Standard normal variates: 64-bit Mersenne Twister words mapped to doubles
/// with 53 random bits, then the cosine branch of Box-Muller,
///   z = sqrt(-2 ln u1) cos(2 pi u2),  u1 in (0, 1], u2 in [0, 1).
/// Each variate consumes exactly two engine words. std::normal_distribution is
/// avoided because its algorithm differs between standard libraries.
class NormalSampler {
   public:
    explicit NormalSampler(uint64_t seed) : engine_(seed) {
    }

    double next();

   private:
    std::mt19937_64 engine_;
};

struct DriftSeries {
    /// ratios[k] = mean of Delta^2 phi over the first k+1 samples / lossless QCRB.
    std::vector<double> ratios;
    /// Accepted control phases, in draw order.
    std::vector<double> phases;
    /// Samples that landed on stationary points and were drawn again.
    int redraws = 0;
    /// Set when redraws exceed 10% of m_max.
    bool pathological = false;
    /// Operating point the jitter is centred on.
    PhaseSensitivity optimum;
};

/// m_max draws from Normal(optimal phase, sigma_drift^2).
std::vector<double> sample_phases(const DriftConfig &config);

/// Running average of the phase variance under jitter. Stationary samples are
/// rejected and redrawn from the same stream.
DriftSeries running_average(const DriftConfig &config);

/// As above with a precomputed operating point (the result of optimal_phase
/// for config.base and config.scheme).
DriftSeries running_average(const DriftConfig &config, const PhaseSensitivity &optimum);

}  // namespace mzi

#endif
