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

#include "mzi/interferometer.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzi {

namespace {

constexpr double kSymplecticTol = 1e-12;

void check_unit_interval(double value, const char *name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

// cov -> keep * cov + add * I, mean -> sqrt(keep) * mean.
GaussianState affine_channel(const GaussianState &state, double keep, double add) {
    const auto dim = state.mean().size();
    return GaussianState::unchecked(
        std::sqrt(keep) * state.mean(), keep * state.cov() + add * Matrix::Identity(dim, dim));
}

}  // namespace

double symplectic_defect(const Matrix &s) {
    const Matrix omega = symplectic_form(static_cast<size_t>(s.rows()) / 2);
    return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticTransform::SymplecticTransform(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() % 2 != 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("symplectic transform must be square with even dimension");
    }
    if (!matrix_.allFinite() || symplectic_defect(matrix_) > kSymplecticTol) {
        throw std::invalid_argument("matrix does not preserve the symplectic form");
    }
}

SymplecticTransform SymplecticTransform::identity(size_t n_modes) {
    return SymplecticTransform(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticTransform SymplecticTransform::operator*(const SymplecticTransform &other) const {
    if (other.matrix_.rows() != matrix_.rows()) {
        throw std::invalid_argument("cannot compose transforms of different dimension");
    }
    return SymplecticTransform(matrix_ * other.matrix_);
}

SymplecticTransform beamsplitter_half() {
    Matrix m(4, 4);
    m << 1, 0, 1, 0,
         0, 1, 0, 1,
         1, 0, -1, 0,
         0, 1, 0, -1;
    return SymplecticTransform(m / std::numbers::sqrt2);
}

SymplecticTransform phase_shift(double phi) {
    const double c = std::cos(phi / 2);
    const double s = std::sin(phi / 2);
    Matrix m(4, 4);
    m << c, -s, 0, 0,
         s, c, 0, 0,
         0, 0, c, s,
         0, 0, -s, c;
    return SymplecticTransform(m);
}

Matrix phase_shift_derivative(double phi) {
    const double c = 0.5 * std::cos(phi / 2);
    const double s = 0.5 * std::sin(phi / 2);
    Matrix m(4, 4);
    m << -s, -c, 0, 0,
         c, -s, 0, 0,
         0, 0, -s, c,
         0, 0, -c, -s;
    return m;
}

SymplecticTransform mzi_transform(double phi) {
    const auto bs = beamsplitter_half();
    return bs * phase_shift(phi) * bs;
}

GaussianState apply_symplectic(const GaussianState &state, const SymplecticTransform &s) {
    if (s.matrix().rows() != state.mean().size()) {
        throw std::invalid_argument("transform dimension does not match state");
    }
    const Matrix &m = s.matrix();
    Matrix cov = m * state.cov() * m.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState::unchecked(m * state.mean(), std::move(cov));
}

GaussianState apply_loss(const GaussianState &state, double loss) {
    check_unit_interval(loss, "loss");
    return affine_channel(state, 1.0 - loss, loss);
}

GaussianState apply_thermal(const GaussianState &state, double t_mix, double n_th) {
    check_unit_interval(t_mix, "thermal mixing ratio");
    if (!(n_th >= 0.0) || !std::isfinite(n_th)) {
        throw std::invalid_argument("thermal occupation must be finite and non-negative");
    }
    return affine_channel(state, 1.0 - t_mix, t_mix * (2.0 * n_th + 1.0));
}

void MziConfig::validate() const {
    if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
        throw std::invalid_argument("alpha_sq must be finite and non-negative");
    }
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("squeeze strength r must be finite and non-negative");
    }
    if (!std::isfinite(theta) || !std::isfinite(delta) || !std::isfinite(phi)) {
        throw std::invalid_argument("phases must be finite");
    }
    check_unit_interval(loss, "loss");
    check_unit_interval(thermal_mix, "thermal mixing ratio");
    if (!(n_th >= 0.0) || !std::isfinite(n_th)) {
        throw std::invalid_argument("thermal occupation must be finite and non-negative");
    }
}

GaussianState mzi_input(const MziConfig &config) {
    config.validate();
    return tensor(coherent(std::sqrt(config.alpha_sq), config.theta), squeezed_vacuum(config.r, config.delta));
}

StateWithDerivative mzi_output(const MziConfig &config) {
    const GaussianState input = mzi_input(config);
    const auto bs = beamsplitter_half();
    const Matrix &b = bs.matrix();
    const SymplecticTransform s = bs * phase_shift(config.phi) * bs;
    const Matrix ds = b * phase_shift_derivative(config.phi) * b;

    // Input excess noise: zero for the coherent mode, the squeezed block minus I.
    const double sh = std::sinh(config.r);
    const double s2 = std::sinh(2.0 * config.r);
    Matrix excess = Matrix::Zero(4, 4);
    excess(2, 2) = 2.0 * sh * sh + s2 * std::cos(config.delta);
    excess(3, 3) = 2.0 * sh * sh - s2 * std::cos(config.delta);
    excess(2, 3) = excess(3, 2) = s2 * std::sin(config.delta);

    GaussianState out = apply_symplectic(input, s);
    Vector d_mean = ds * input.mean();
    // S is orthogonal, so d(S S^T)/dphi = 0 and only the excess contributes.
    Matrix d_cov = ds * excess * s.matrix().transpose();
    d_cov = (d_cov + d_cov.transpose()).eval();
    excess = (s.matrix() * excess * s.matrix().transpose()).eval();
    excess = (0.5 * (excess + excess.transpose())).eval();

    // Loss then thermal noise; both scale derivatives by their linear part.
    out = apply_loss(out, config.loss);
    out = apply_thermal(out, config.thermal_mix, config.n_th);
    const double keep = (1.0 - config.loss) * (1.0 - config.thermal_mix);
    d_mean *= std::sqrt(1.0 - config.loss) * std::sqrt(1.0 - config.thermal_mix);
    d_cov *= keep;
    excess *= keep;
    excess.diagonal().array() += 2.0 * config.n_th * config.thermal_mix;

    return StateWithDerivative{std::move(out), std::move(d_mean), std::move(d_cov), std::move(excess)};
}

}  // namespace mzi
