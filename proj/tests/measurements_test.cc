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

#include "mzi/measurements.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "mzi/errors.h"
#include "support/random_states.h"

using namespace mzi;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference closed forms at the optimal phase, lossless.
double ref_parity(double a2, double r) {
    return 1 / (a2 * std::exp(2 * r) + std::pow(std::sinh(r), 2));
}
double ref_homodyne(double a2, double r, double loss) {
    return 1 / (a2 * std::exp(2 * r)) + loss / (a2 * (1 - loss));
}
double ref_difference(double a2, double r) {
    const double d = std::cosh(2 * r) - 2 * a2 - 1;
    return (4 * a2 + std::pow(std::exp(2 * r) - 1, 2)) / std::exp(2 * r) / (d * d);
}
double ref_intensity(double a2, double r) {
    const double d = std::cosh(2 * r) - 2 * a2 - 1;
    return (4 * a2 * std::exp(-2 * r) + 2 * std::cosh(2 * r) + 4 * std::sqrt(2 * a2) * std::sinh(2 * r) - 2) /
           (d * d);
}

// Photon-number statistics of a Gaussian state from its first two moments:
// Var(n) = (tr sigma^2 - 2) / 8 + d^T sigma d / 2 per mode, and
// Cov(n1, n2) = sum(sigma12^2) / 8 + d1^T sigma12 d2 / 2.
double ref_photon_variance(const GaussianState &s, int mode) {
    const int o = 2 * (mode - 1);
    Matrix c = s.cov().block(o, o, 2, 2);
    Vector d = s.mean().segment(o, 2);
    return ((c * c).trace() - 2) / 8 + d.dot(c * d) / 2;
}
double ref_photon_covariance(const GaussianState &s) {
    Matrix c12 = s.cov().block(0, 2, 2, 2);
    return c12.squaredNorm() / 8 + s.mean().segment(0, 2).dot(c12 * s.mean().segment(2, 2)) / 2;
}

MziConfig config(double a2, double r, double loss = 0.0) {
    MziConfig c;
    c.alpha_sq = a2;
    c.r = r;
    c.loss = loss;
    return c;
}

}  // namespace

TEST(measurements, scheme_names_round_trip) {
    EXPECT_EQ(scheme_name(Intensity{}), "intensity");
    EXPECT_EQ(scheme_name(Intensity{2}), "intensity:2");
    EXPECT_EQ(scheme_name(IntensityDifference{}), "intensity-difference");
    EXPECT_EQ(scheme_name(Homodyne{}), "homodyne:1");
    EXPECT_EQ(scheme_name(Parity{}), "parity");
    EXPECT_EQ(scheme_name(Parity{1}), "parity:1");
    for (const char *text : {"intensity", "intensity:1", "intensity-difference", "homodyne:2", "parity:2"}) {
        EXPECT_EQ(scheme_name(parse_scheme(text)), text);
    }
    EXPECT_EQ(scheme_name(parse_scheme("diff")), "intensity-difference");
    EXPECT_EQ(scheme_name(parse_scheme("homodyne")), "homodyne:1");
    auto h = std::get<Homodyne>(parse_scheme("homodyne:1:0.5"));
    EXPECT_EQ(h.angle, 0.5);
    for (const char *bad : {"", "intense", "parity:3", "intensity:0", "homodyne:1:7", "parity:x"}) {
        EXPECT_THROW(parse_scheme(bad), std::invalid_argument) << bad;
    }
    EXPECT_TRUE(port_resolved(Homodyne{}));
    EXPECT_TRUE(port_resolved(IntensityDifference{}));
    EXPECT_FALSE(port_resolved(Parity{}));
}

TEST(measurements, expectation_examples) {
    EXPECT_DOUBLE_EQ(expectation(vacuum(1), Parity{1}), 1.0);
    EXPECT_NEAR(expectation(coherent(0.8, 0.3), Parity{1}), std::exp(-2 * 0.64), 1e-15);
    EXPECT_NEAR(expectation(coherent(5.0, 0.0), Homodyne{1}), std::sqrt(2.0) * 5, 1e-14);
    EXPECT_NEAR(expectation(coherent(5.0, 0.0), Intensity{1}), 25.0, 1e-12);
    EXPECT_NEAR(expectation(tensor(coherent(5.0, 0.0), coherent(2.0, 1.0)), IntensityDifference{}), 21.0, 1e-12);
    // Squeezed vacuum parity is 1.
    EXPECT_NEAR(expectation(squeezed_vacuum(1.2, 0.4), Parity{1}), 1.0, 1e-12);
    // Thermal state parity 1 / (2 n + 1).
    auto th = apply_thermal(vacuum(1), 1.0, 1.5);
    EXPECT_NEAR(expectation(th, Parity{1}), 0.25, 1e-15);
}

TEST(measurements, expectation_rejects_bad_modes) {
    EXPECT_THROW(expectation(vacuum(1), Parity{2}), std::invalid_argument);
    EXPECT_THROW(expectation(vacuum(2), Intensity{3}), std::invalid_argument);
    EXPECT_THROW(expectation(vacuum(2), Intensity{}), std::invalid_argument);
    EXPECT_THROW(expectation(vacuum(1), IntensityDifference{}), std::invalid_argument);
    EXPECT_THROW(variance(vacuum(2), Homodyne{0}), std::invalid_argument);
}

TEST(measurements, variance_examples) {
    EXPECT_DOUBLE_EQ(variance(vacuum(1), Homodyne{1}), 0.5);
    EXPECT_NEAR(variance(coherent(std::sqrt(37.0), 1.1), Intensity{1}), 37.0, 1e-10);
    EXPECT_NEAR(variance(vacuum(1), Parity{1}), 0.0, 1e-15);
    EXPECT_NEAR(variance(vacuum(2), IntensityDifference{}), 0.0, 1e-15);
    EXPECT_NEAR(variance(vacuum(1), Intensity{1}), 0.0, 1e-15);
    // Squeezed vacuum: Var(n) = 2 sinh^2 r cosh^2 r.
    const double r = 0.9;
    EXPECT_NEAR(variance(squeezed_vacuum(r, 0.0), Intensity{1}),
                2 * std::pow(std::sinh(r) * std::cosh(r), 2), 1e-12);
    // Rotated quadrature of a squeezed state.
    EXPECT_NEAR(variance(squeezed_vacuum(r, 0.0), Homodyne{1, kPi / 2}), std::exp(-2 * r) / 2, 1e-14);
}

TEST(measurements, photon_statistics_match_moment_formulas) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; i++) {
        auto s = sample::random_two_mode_state(rng, 1.0, 3.0);
        const double v1 = ref_photon_variance(s, 1);
        const double v2 = ref_photon_variance(s, 2);
        const double scale = 1 + v1 + v2;
        EXPECT_NEAR(variance(s, Intensity{1}), v1, 1e-10 * scale);
        EXPECT_NEAR(variance(s, Intensity{2}), v2, 1e-10 * scale);
        EXPECT_NEAR(variance(s, IntensityDifference{}), v1 + v2 - 2 * ref_photon_covariance(s), 1e-10 * scale);
        for (int m : {1, 2}) {
            auto red = reduced_state(s, m);
            PhasePoint origin = Vector::Zero(2);
            const double pi_w = kPi * wigner_at(red, origin);
            EXPECT_NEAR(expectation(s, Parity{m}), pi_w, 1e-12);
            EXPECT_NEAR(variance(s, Parity{m}), 1 - pi_w * pi_w, 1e-12);
            EXPECT_NEAR(variance(s, Homodyne{m}), red.cov()(0, 0) / 2, 1e-14);
        }
    }
}

TEST(measurements, homodyne_phase_variance_examples) {
    auto lossless = phase_variance(config(500, 1).with_phi(kPi), Homodyne{});
    EXPECT_NEAR(lossless.variance, 2.70670566e-4, 1e-12);
    EXPECT_NEAR(lossless.variance, ref_homodyne(500, 1, 0), 1e-9 * lossless.variance);
    EXPECT_EQ(lossless.at_phase, kPi);

    auto lossy = phase_variance(config(500, 1, 0.2).with_phi(kPi), Homodyne{});
    EXPECT_NEAR(lossy.variance, 7.70670e-4, 1e-9);
    for (double loss : {0.0, 0.1, 0.2, 0.5}) {
        const double want = ref_homodyne(500, 1, loss);
        EXPECT_NEAR(phase_variance(config(500, 1, loss).with_phi(kPi), Homodyne{}).variance, want, 1e-9 * want);
    }
}

TEST(measurements, stationary_points_raise) {
    // d<x1>/dphi vanishes at phi = 0.
    EXPECT_THROW(phase_variance(config(500, 1).with_phi(0.0), Homodyne{}), StationaryPointError);
    // Port 2 x quadrature has zero mean for every phi.
    EXPECT_THROW(phase_variance(config(500, 1).with_phi(1.0), Homodyne{2}), StationaryPointError);
    EXPECT_THROW(optimal_phase(config(500, 1), Homodyne{2}), DegenerateConfigurationError);
    // Vacuum input carries no phase information.
    MziConfig dark = config(0, 0);
    EXPECT_THROW(optimal_phase(dark, IntensityDifference{}), DegenerateConfigurationError);
}

TEST(measurements, derivative_matches_finite_difference) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0, 1);
    const MeasurementScheme schemes[] = {Intensity{1}, Intensity{2}, IntensityDifference{}, Homodyne{1},
                                         Homodyne{2, 0.7}, Parity{1}, Parity{2}};
    int checked = 0;
    for (int i = 0; i < 40; i++) {
        MziConfig c;
        c.alpha_sq = 0.5 + 20 * u(rng);
        c.theta = 2 * kPi * u(rng);
        c.r = u(rng);
        c.delta = 2 * kPi * u(rng);
        c.phi = 2 * kPi * u(rng);
        c.loss = 0.4 * u(rng);
        c.thermal_mix = 0.2 * u(rng);
        c.n_th = u(rng);
        auto out = mzi_output(c);
        const double h = 1e-5;
        for (const auto &scheme : schemes) {
            const double analytic = expectation_derivative(out, scheme);
            const double fd = (expectation(mzi_output(c.with_phi(c.phi + h)).state, scheme) -
                               expectation(mzi_output(c.with_phi(c.phi - h)).state, scheme)) /
                              (2 * h);
            const double scale = std::max(std::abs(analytic), 1e-3 * std::max(1.0, c.alpha_sq));
            EXPECT_NEAR(analytic, fd, 1e-6 * scale) << scheme_name(scheme) << " trial " << i;
            checked++;
        }
    }
    EXPECT_EQ(checked, 280);
}

TEST(measurements, lossless_optima_match_closed_forms) {
    for (double a2 : {1.0, 10.0, 100.0, 500.0}) {
        for (double r : {0.0, 0.5, 1.0}) {
            auto c = config(a2, r);
            const double parity = optimal_phase(c, Parity{}).variance;
            const double homodyne = optimal_phase(c, Homodyne{}).variance;
            const double diff = optimal_phase(c, IntensityDifference{}).variance;
            const double intensity = optimal_phase(c, Intensity{}).variance;
            EXPECT_NEAR(parity, ref_parity(a2, r), 1e-9 * ref_parity(a2, r)) << a2 << " " << r;
            EXPECT_NEAR(homodyne, ref_homodyne(a2, r, 0), 1e-6 * ref_homodyne(a2, r, 0)) << a2 << " " << r;
            EXPECT_NEAR(diff, ref_difference(a2, r), 1e-6 * ref_difference(a2, r)) << a2 << " " << r;
            EXPECT_NEAR(intensity, ref_intensity(a2, r), 1e-6 * ref_intensity(a2, r)) << a2 << " " << r;
        }
    }
}

TEST(measurements, optimum_examples) {
    auto c = config(500, 1);
    auto h = optimal_phase(c, Homodyne{});
    EXPECT_NEAR(h.at_phase, kPi, 1e-6);
    EXPECT_NEAR(h.variance, 2.70670566e-4, 1e-12);

    const double parity = optimal_phase(c, Parity{}).variance;
    const double diff = optimal_phase(c, IntensityDifference{}).variance;
    const double intensity = optimal_phase(c, Intensity{}).variance;
    EXPECT_NEAR(parity, 2.70569e-4, 1e-9);
    EXPECT_NEAR(diff, 2.7773e-4, 1e-8);
    EXPECT_NEAR(intensity, 7.3904e-4, 1e-8);
    EXPECT_LE(parity, h.variance);
    EXPECT_LE(h.variance, diff);
    EXPECT_LE(diff, intensity);
}

TEST(measurements, coherent_light_respects_shot_noise) {
    for (double a2 : {1.0, 10.0, 500.0}) {
        auto c = config(a2, 0.0);
        const double snl = 1 / a2;
        for (const MeasurementScheme &s :
             {MeasurementScheme{Intensity{}}, MeasurementScheme{IntensityDifference{}},
              MeasurementScheme{Homodyne{}}, MeasurementScheme{Parity{}}}) {
            EXPECT_GE(optimal_phase(c, s).variance, snl * (1 - 1e-9)) << scheme_name(s);
        }
        EXPECT_NEAR(optimal_phase(c, Homodyne{}).variance, snl, 1e-9 * snl);
    }
}

TEST(measurements, loss_ordering_against_shot_noise) {
    auto c = config(500, 1, 0.2);
    const double snl = 1 / (500 + std::pow(std::sinh(1.0), 2));
    EXPECT_GT(optimal_phase(c, Parity{}).variance, snl);
    EXPECT_LT(optimal_phase(c, Homodyne{}).variance, snl);
    EXPECT_LT(optimal_phase(c, IntensityDifference{}).variance, snl);
}

TEST(measurements, port_resolution) {
    auto c = config(500, 1);
    // Lossless intensity optima coincide on both ports; ties go to port 1.
    auto intensity = std::get<Intensity>(resolve_port(c, Intensity{}));
    EXPECT_EQ(intensity.mode, 1);
    auto parity = std::get<Parity>(resolve_port(c, Parity{}));
    ASSERT_TRUE(parity.mode.has_value());
    EXPECT_EQ(std::get<Parity>(resolve_port(c, Parity{2})).mode, 2);
    auto opt = optimal_phase(c, Parity{});
    EXPECT_TRUE(port_resolved(opt.scheme));
    EXPECT_EQ(scheme_name(opt.scheme), scheme_name(MeasurementScheme{parity}));
}

TEST(measurements, phase_variance_is_positive) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.05, 2 * kPi - 0.05);
    auto c = config(50, 0.6, 0.1);
    for (int i = 0; i < 50; i++) {
        auto p = phase_variance(c.with_phi(u(rng)), IntensityDifference{});
        EXPECT_GT(p.variance, 0.0);
    }
}

TEST(measurements, output_path_agrees_with_moment_expansion) {
    // Away from dark fringes the stable output-path variance and the general
    // moment expansion must give the same phase sensitivity.
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 40; i++) {
        MziConfig c;
        c.alpha_sq = 1 + 100 * u(rng);
        c.r = u(rng);
        c.delta = 2 * kPi * u(rng);
        c.phi = 0.3 + 2.5 * u(rng);
        c.loss = 0.3 * u(rng);
        c.thermal_mix = 0.2 * u(rng);
        c.n_th = u(rng);
        auto out = mzi_output(c);
        for (const MeasurementScheme &s : {MeasurementScheme{Intensity{1}}, MeasurementScheme{Intensity{2}},
                                           MeasurementScheme{IntensityDifference{}}}) {
            const double slope = expectation_derivative(out, s);
            const double via_moments = variance(out.state, s) / (slope * slope);
            const double got = phase_variance_at(out, s);
            EXPECT_NEAR(got, via_moments, 1e-8 * via_moments) << scheme_name(s) << " trial " << i;
        }
    }
}
