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

#include "mzi/gaussian_state.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "mzi/errors.h"

namespace mzi {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalTol = 1e-9;
constexpr int kMaxMomentDegree = 4;

void check_mode(const GaussianState &state, int mode) {
    if (mode < 1 || static_cast<size_t>(mode) > state.n_modes()) {
        throw std::invalid_argument(
            "mode " + std::to_string(mode) + " out of range for " + std::to_string(state.n_modes()) +
            "-mode state");
    }
}

// Central moment of a zero-mean Gaussian with classical covariance cov / 2,
// over the coordinates selected by `mask` from `coords`.
double central_moment(const Matrix &cov, std::span<const int> coords, unsigned mask) {
    int picked[kMaxMomentDegree];
    int n = 0;
    for (size_t i = 0; i < coords.size(); i++) {
        if (mask & (1u << i)) {
            picked[n++] = coords[i];
        }
    }
    auto c = [&](int a, int b) {
        return 0.5 * cov(picked[a], picked[b]);
    };
    switch (n) {
        case 0:
            return 1.0;
        case 2:
            return c(0, 1);
        case 4:
            return c(0, 1) * c(2, 3) + c(0, 2) * c(1, 3) + c(0, 3) * c(1, 2);
        default:
            return 0.0;
    }
}

}  // namespace

GaussianState::GaussianState(Vector mean, Matrix cov, NoCheck) : mean_(std::move(mean)), cov_(std::move(cov)) {
}

GaussianState GaussianState::unchecked(Vector mean, Matrix cov) {
    return GaussianState(std::move(mean), std::move(cov), NoCheck{});
}

GaussianState::GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
        throw std::invalid_argument("mean vector length must be a positive even number");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw std::invalid_argument("covariance shape does not match mean vector");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
        throw std::invalid_argument("state contains non-finite entries");
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
        throw std::invalid_argument("covariance is not symmetric");
    }
    if (!is_physical(cov_, kPhysicalTol)) {
        throw std::invalid_argument("covariance violates the uncertainty relation");
    }
}

Matrix symplectic_form(size_t n_modes) {
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (size_t k = 0; k < n_modes; k++) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

std::vector<double> symplectic_eigenvalues(const Matrix &cov) {
    const auto n_modes = static_cast<size_t>(cov.rows()) / 2;
    // Omega * sigma has eigenvalues +-i nu_k.
    Eigen::EigenSolver<Matrix> solver(symplectic_form(n_modes) * cov, false);
    std::vector<double> magnitudes;
    magnitudes.reserve(2 * n_modes);
    for (const auto &ev : solver.eigenvalues()) {
        magnitudes.push_back(std::abs(ev.imag()));
    }
    std::sort(magnitudes.begin(), magnitudes.end());
    std::vector<double> result;
    for (size_t k = 0; k < n_modes; k++) {
        result.push_back(0.5 * (magnitudes[2 * k] + magnitudes[2 * k + 1]));
    }
    return result;
}

bool is_physical(const Matrix &cov, double tol) {
    if (cov.llt().info() != Eigen::Success) {
        return false;
    }
    for (double nu : symplectic_eigenvalues(cov)) {
        if (nu < 1.0 - tol) {
            return false;
        }
    }
    return true;
}

GaussianState vacuum(size_t n_modes) {
    if (n_modes == 0) {
        throw std::invalid_argument("vacuum needs at least one mode");
    }
    return GaussianState::unchecked(Vector::Zero(2 * n_modes), Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState coherent(double amplitude, double phase) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude) || !std::isfinite(phase)) {
        throw std::invalid_argument("coherent amplitude must be finite and non-negative");
    }
    Vector mean(2);
    mean << std::numbers::sqrt2 * amplitude * std::cos(phase), std::numbers::sqrt2 * amplitude * std::sin(phase);
    return GaussianState::unchecked(std::move(mean), Matrix::Identity(2, 2));
}

GaussianState squeezed_vacuum(double r, double delta) {
    if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(delta)) {
        throw std::invalid_argument("squeeze strength must be finite and non-negative");
    }
    const double ch = std::cosh(2 * r);
    const double sh = std::sinh(2 * r);
    Matrix cov(2, 2);
    cov << ch + sh * std::cos(delta), sh * std::sin(delta), sh * std::sin(delta), ch - sh * std::cos(delta);
    return GaussianState::unchecked(Vector::Zero(2), std::move(cov));
}

GaussianState tensor(const GaussianState &a, const GaussianState &b) {
    const auto na = a.mean().size();
    const auto nb = b.mean().size();
    Vector mean(na + nb);
    mean << a.mean(), b.mean();
    Matrix cov = Matrix::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState::unchecked(std::move(mean), std::move(cov));
}

double wigner_at(const GaussianState &state, const PhasePoint &point) {
    if (point.size() != state.mean().size()) {
        throw std::invalid_argument("phase point dimension does not match state");
    }
    Eigen::LLT<Matrix> llt(state.cov());
    if (llt.info() != Eigen::Success) {
        throw NumericalDomainError("covariance is not positive definite");
    }
    const Matrix &l = llt.matrixL();
    const double log_det = 2.0 * l.diagonal().array().log().sum();
    const Vector y = llt.matrixL().solve(point - state.mean());
    const double n = static_cast<double>(state.n_modes());
    return std::exp(-y.squaredNorm() - 0.5 * log_det - n * std::log(std::numbers::pi));
}

GaussianState reduced_state(const GaussianState &state, int mode) {
    check_mode(state, mode);
    const int k = 2 * (mode - 1);
    return GaussianState::unchecked(state.mean().segment(k, 2), state.cov().block(k, k, 2, 2));
}

double mean_photon(const GaussianState &state, int mode) {
    check_mode(state, mode);
    const int k = 2 * (mode - 1);
    const auto &d = state.mean();
    const auto &s = state.cov();
    return (s(k, k) + s(k + 1, k + 1)) / 4.0 + (d(k) * d(k) + d(k + 1) * d(k + 1)) / 2.0 - 0.5;
}

MomentIndex::MomentIndex(std::vector<int> powers) : powers_(std::move(powers)) {
    for (int p : powers_) {
        if (p < 0) {
            throw std::invalid_argument("moment exponents must be non-negative");
        }
    }
}

MomentIndex MomentIndex::of_coordinates(size_t n_coords, std::span<const int> coords) {
    std::vector<int> powers(n_coords, 0);
    for (int c : coords) {
        if (c < 0 || static_cast<size_t>(c) >= n_coords) {
            throw std::invalid_argument("coordinate index out of range");
        }
        powers[c]++;
    }
    return MomentIndex(std::move(powers));
}

int MomentIndex::degree() const {
    int total = 0;
    for (int p : powers_) {
        total += p;
    }
    return total;
}

double gaussian_moment(const GaussianState &state, std::span<const int> coords) {
    if (coords.size() > static_cast<size_t>(kMaxMomentDegree)) {
        throw UnsupportedOrderError(
            "moments above degree 4 are not supported (got " + std::to_string(coords.size()) + ")");
    }
    const auto dim = state.mean().size();
    for (int c : coords) {
        if (c < 0 || c >= dim) {
            throw std::invalid_argument("coordinate index out of range");
        }
    }
    const auto &d = state.mean();
    const unsigned full = (1u << coords.size()) - 1;
    double total = 0.0;
    // E[prod (d_i + Y_i)] = sum over subsets S of prod_{i not in S} d_i * E[prod_{i in S} Y_i].
    for (unsigned mask = 0; mask <= full; mask++) {
        if (std::popcount(mask) % 2 != 0) {
            continue;
        }
        double shift = 1.0;
        for (size_t i = 0; i < coords.size(); i++) {
            if (!(mask & (1u << i))) {
                shift *= d(coords[i]);
            }
        }
        total += shift * central_moment(state.cov(), coords, mask);
    }
    return total;
}

double gaussian_moment(const GaussianState &state, const MomentIndex &index) {
    if (index.powers().size() != static_cast<size_t>(state.mean().size())) {
        throw std::invalid_argument("moment index length does not match state dimension");
    }
    if (index.degree() > kMaxMomentDegree) {
        throw UnsupportedOrderError(
            "moments above degree 4 are not supported (got " + std::to_string(index.degree()) + ")");
    }
    std::vector<int> coords;
    for (size_t i = 0; i < index.powers().size(); i++) {
        coords.insert(coords.end(), index.powers()[i], static_cast<int>(i));
    }
    return gaussian_moment(state, std::span<const int>(coords));
}

PhasePolynomial PhasePolynomial::constant(double c) {
    PhasePolynomial p;
    p.add_term(c, {});
    return p;
}

PhasePolynomial PhasePolynomial::coordinate(int index) {
    PhasePolynomial p;
    p.add_term(1.0, {index});
    return p;
}

void PhasePolynomial::add_term(double coef, std::vector<int> coords) {
    std::sort(coords.begin(), coords.end());
    auto [it, inserted] = terms_.try_emplace(std::move(coords), coef);
    if (!inserted) {
        it->second += coef;
    }
    if (it->second == 0.0) {
        terms_.erase(it);
    }
}

PhasePolynomial PhasePolynomial::operator+(const PhasePolynomial &other) const {
    PhasePolynomial result = *this;
    for (const auto &[coords, coef] : other.terms_) {
        result.add_term(coef, coords);
    }
    return result;
}

PhasePolynomial PhasePolynomial::operator-(const PhasePolynomial &other) const {
    return *this + other * -1.0;
}

PhasePolynomial PhasePolynomial::operator*(const PhasePolynomial &other) const {
    PhasePolynomial result;
    for (const auto &[ca, a] : terms_) {
        for (const auto &[cb, b] : other.terms_) {
            std::vector<int> coords = ca;
            coords.insert(coords.end(), cb.begin(), cb.end());
            result.add_term(a * b, std::move(coords));
        }
    }
    return result;
}

PhasePolynomial PhasePolynomial::operator*(double scale) const {
    PhasePolynomial result;
    for (const auto &[coords, coef] : terms_) {
        result.add_term(coef * scale, coords);
    }
    return result;
}

int PhasePolynomial::degree() const {
    int d = 0;
    for (const auto &[coords, coef] : terms_) {
        d = std::max(d, static_cast<int>(coords.size()));
    }
    return d;
}

double polynomial_expectation(const GaussianState &state, const PhasePolynomial &poly) {
    double total = 0.0;
    for (const auto &[coords, coef] : poly.terms()) {
        total += coef * gaussian_moment(state, std::span<const int>(coords));
    }
    return total;
}

}  // namespace mzi
