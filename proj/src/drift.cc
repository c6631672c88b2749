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

#include "mzi/drift.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mzi/bounds.h"
#include "mzi/errors.h"

namespace mzi {

namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

}  // namespace

double NormalSampler::next() {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kTwoPow53Inv;
    const double u2 = static_cast<double>(engine_() >> 11) * kTwoPow53Inv;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void DriftConfig::validate() const {
    base.validate();
    if (!(sigma_drift >= 0.0) || !std::isfinite(sigma_drift)) {
        throw std::invalid_argument("sigma_drift must be finite and non-negative");
    }
    if (m_max < 1) {
        throw std::invalid_argument("m_max must be at least 1");
    }
}

std::vector<double> sample_phases(const DriftConfig &config) {
    config.validate();
    const double center = optimal_phase(config.base, config.scheme).at_phase;
    NormalSampler sampler(config.seed);
    std::vector<double> phases(config.m_max);
    for (auto &phi : phases) {
        phi = center + config.sigma_drift * sampler.next();
    }
    return phases;
}

DriftSeries running_average(const DriftConfig &config) {
    config.validate();
    return running_average(config, optimal_phase(config.base, config.scheme));
}

DriftSeries running_average(const DriftConfig &config, const PhaseSensitivity &optimum) {
    config.validate();
    const double bound = qcrb_lossless(config.base.alpha_sq, config.base.r);
    const int max_redraws = 100 * config.m_max + 1000;

    DriftSeries series;
    series.optimum = optimum;
    series.ratios.reserve(config.m_max);
    series.phases.reserve(config.m_max);

    NormalSampler sampler(config.seed);
    double sum = 0.0;
    while (static_cast<int>(series.phases.size()) < config.m_max) {
        const double phi = optimum.at_phase + config.sigma_drift * sampler.next();
        double value;
        try {
            value = phase_variance_at(mzi_output(config.base.with_phi(phi)), optimum.scheme);
        } catch (const StationaryPointError &) {
            if (++series.redraws > max_redraws) {
                throw DegenerateConfigurationError("phase jitter keeps landing on stationary points");
            }
            continue;
        }
        sum += value;
        series.phases.push_back(phi);
        series.ratios.push_back(sum / static_cast<double>(series.phases.size()) / bound);
    }
    series.pathological = series.redraws > 0.1 * config.m_max;
    return series;
}

}  // namespace mzi
