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

#include <cmath>
#include <limits>
#include <numbers>

#include "gtest/gtest.h"

#include "mzi/errors.h"

using namespace mzi;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; i++) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

}  // namespace

TEST(kernels, phase_curve_parallel_matches_serial) {
    MziConfig base;
    base.loss = 0.2;
    auto phis = linspace(0, 2 * std::numbers::pi, 257);
    for (const MeasurementScheme &s : {MeasurementScheme{Intensity{1}}, MeasurementScheme{IntensityDifference{}},
                                       MeasurementScheme{Homodyne{1}}, MeasurementScheme{Parity{2}}}) {
        auto serial = phase_curve(base, s, phis, Execution::serial);
        auto parallel = phase_curve(base, s, phis, Execution::parallel);
        ASSERT_EQ(serial.size(), phis.size());
        for (size_t i = 0; i < phis.size(); i++) {
            EXPECT_EQ(serial[i], parallel[i]) << scheme_name(s) << " i=" << i;
            if (std::isfinite(serial[i])) {
                EXPECT_EQ(serial[i], phase_variance(base.with_phi(phis[i]), s).variance);
            }
        }
    }
}

TEST(kernels, phase_curve_marks_stationary_points) {
    MziConfig base;
    const double phis[] = {0.0, std::numbers::pi};
    auto v = phase_curve(base, Homodyne{1}, phis, Execution::serial);
    EXPECT_EQ(v[0], std::numeric_limits<double>::infinity());
    EXPECT_TRUE(std::isfinite(v[1]));
}

TEST(kernels, phase_curve_needs_resolved_port) {
    MziConfig base;
    const double phis[] = {1.0};
    EXPECT_THROW(phase_curve(base, Parity{}, phis, Execution::serial), std::invalid_argument);
    EXPECT_THROW(phase_curve(base, Parity{}, phis, Execution::parallel), std::invalid_argument);
}

TEST(kernels, power_curve_parallel_matches_serial) {
    MziConfig base;
    base.loss = 0.2;
    std::vector<double> alpha_sq;
    for (int k = 0; k <= 8; k++) {
        alpha_sq.push_back(std::pow(10.0, 3 + 3.0 * k / 8));
    }
    for (const MeasurementScheme &s : {MeasurementScheme{Intensity{}}, MeasurementScheme{Parity{}}}) {
        auto serial = power_curve(base, s, alpha_sq, Execution::serial);
        auto parallel = power_curve(base, s, alpha_sq, Execution::parallel);
        ASSERT_EQ(serial.size(), alpha_sq.size());
        for (size_t i = 0; i < alpha_sq.size(); i++) {
            EXPECT_EQ(serial[i].variance, parallel[i].variance);
            EXPECT_EQ(serial[i].at_phase, parallel[i].at_phase);
            EXPECT_EQ(scheme_name(serial[i].scheme), scheme_name(parallel[i].scheme));
            MziConfig point = base;
            point.alpha_sq = alpha_sq[i];
            EXPECT_EQ(serial[i].variance, optimal_phase(point, s).variance);
        }
    }
}

TEST(kernels, drift_ensemble_parallel_matches_serial) {
    DriftConfig c;
    c.scheme = IntensityDifference{};
    c.m_max = 50;
    std::vector<uint64_t> seeds{1, 2, 3, 17, 1000, 1ull << 40};
    auto serial = drift_ensemble(c, seeds, Execution::serial);
    auto parallel = drift_ensemble(c, seeds, Execution::parallel);
    ASSERT_EQ(serial.size(), seeds.size());
    for (size_t i = 0; i < seeds.size(); i++) {
        EXPECT_EQ(serial[i].ratios, parallel[i].ratios);
        EXPECT_EQ(serial[i].phases, parallel[i].phases);
        DriftConfig single = c;
        single.seed = seeds[i];
        EXPECT_EQ(serial[i].ratios, running_average(single).ratios);
    }
}

TEST(kernels, errors_propagate_from_workers) {
    MziConfig bad;
    bad.loss = 2.0;
    const double phis[] = {0.5, 1.0, 1.5};
    EXPECT_THROW(phase_curve(bad, Homodyne{1}, phis, Execution::parallel), std::invalid_argument);
    const double alphas[] = {10.0, -1.0, 20.0};
    EXPECT_THROW(power_curve(MziConfig{}, Homodyne{1}, alphas, Execution::parallel), std::invalid_argument);
    DriftConfig degenerate;
    degenerate.scheme = Homodyne{2};
    const uint64_t seeds[] = {1, 2};
    EXPECT_THROW(drift_ensemble(degenerate, seeds, Execution::parallel), DegenerateConfigurationError);
}

TEST(kernels, empty_inputs) {
    EXPECT_TRUE(phase_curve(MziConfig{}, Homodyne{1}, {}, Execution::parallel).empty());
    EXPECT_TRUE(power_curve(MziConfig{}, Homodyne{1}, {}, Execution::parallel).empty());
}
