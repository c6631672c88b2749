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

#ifndef MZI_GAUSSIAN_STATE_H
#define MZI_GAUSSIAN_STATE_H

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mzi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point in phase space, ordered (x1, p1, x2, p2, ...).
using PhasePoint = Vector;

/// An N-mode Gaussian state in units with hbar = 1.
///
/// The covariance follows sigma_ij = <X_i X_j + X_j X_i> - 2 <X_i><X_j>, so the
/// vacuum has identity covariance and the classical covariance of the Wigner
/// function is sigma / 2.
class GaussianState {
   public:
    /// Validates shape, finiteness, symmetry (1e-12) and physicality
    /// (symplectic eigenvalues >= 1 - 1e-9). Throws std::invalid_argument.
    GaussianState(Vector mean, Matrix cov);

    /// Skips validation. For internal pipelines whose outputs are physical
    /// by construction.
    static GaussianState unchecked(Vector mean, Matrix cov);

    size_t n_modes() const {
        return static_cast<size_t>(mean_.size()) / 2;
    }
    const Vector &mean() const {
        return mean_;
    }
    const Matrix &cov() const {
        return cov_;
    }

   private:
    struct NoCheck {};
    GaussianState(Vector mean, Matrix cov, NoCheck);

    Vector mean_;
    Matrix cov_;
};

/// Block-diagonal [[0, 1], [-1, 0]] per mode.
Matrix symplectic_form(size_t n_modes);

/// Symplectic eigenvalues of a 2N x 2N covariance, sorted ascending (N values).
std::vector<double> symplectic_eigenvalues(const Matrix &cov);

/// True when every symplectic eigenvalue is at least 1 - tol.
bool is_physical(const Matrix &cov, double tol = 1e-9);

GaussianState vacuum(size_t n_modes);

/// Coherent state |alpha e^{i theta}>; mean (sqrt2 |alpha| cos theta, sqrt2 |alpha| sin theta).
GaussianState coherent(double amplitude, double phase);

/// Squeezed vacuum with squeeze strength r and squeeze angle delta.
/// At delta = 0 the covariance is diag(e^{2r}, e^{-2r}).
GaussianState squeezed_vacuum(double r, double delta);

/// Product state: concatenated means, block-diagonal covariance.
GaussianState tensor(const GaussianState &a, const GaussianState &b);

/// Wigner function W(X) = exp(-(X-d)^T sigma^{-1} (X-d)) / (pi^N sqrt(det sigma)).
double wigner_at(const GaussianState &state, const PhasePoint &point);

/// Gaussian marginal of one mode. `mode` is 1-based.
GaussianState reduced_state(const GaussianState &state, int mode);

/// <a^dagger a> of one mode (1-based): (s_xx + s_pp)/4 + (d_x^2 + d_p^2)/2 - 1/2.
double mean_photon(const GaussianState &state, int mode);

/// Exponent of each phase-space coordinate in a monomial.
class MomentIndex {
   public:
    explicit MomentIndex(std::vector<int> powers);

    /// Index of the product of the listed (0-based) coordinates, repeats allowed.
    static MomentIndex of_coordinates(size_t n_coords, std::span<const int> coords);

    const std::vector<int> &powers() const {
        return powers_;
    }
    int degree() const;

   private:
    std::vector<int> powers_;
};

/// Exact non-central moment E[prod X_i^{k_i}] of the Wigner distribution, by
/// Isserlis/Wick expansion with classical covariance sigma / 2. Degree <= 4,
/// otherwise throws UnsupportedOrderError.
double gaussian_moment(const GaussianState &state, const MomentIndex &index);

/// Same as gaussian_moment, taking the monomial as a list of 0-based
/// coordinates (e.g. {0, 0, 2} for x1^2 x2).
double gaussian_moment(const GaussianState &state, std::span<const int> coords);

/// A real polynomial in the phase-space coordinates, used to express
/// measurement observables by their Weyl symbols.
class PhasePolynomial {
   public:
    PhasePolynomial() = default;

    static PhasePolynomial constant(double c);
    static PhasePolynomial coordinate(int index);

    /// Adds coef * prod_{i in coords} X_i.
    void add_term(double coef, std::vector<int> coords);

    PhasePolynomial operator+(const PhasePolynomial &other) const;
    PhasePolynomial operator-(const PhasePolynomial &other) const;
    PhasePolynomial operator*(const PhasePolynomial &other) const;
    PhasePolynomial operator*(double scale) const;

    int degree() const;
    const std::map<std::vector<int>, double> &terms() const {
        return terms_;
    }

   private:
    // Keys are sorted coordinate lists.
    std::map<std::vector<int>, double> terms_;
};

/// Expectation of a polynomial under the state's Wigner distribution.
double polynomial_expectation(const GaussianState &state, const PhasePolynomial &poly);

}  // namespace mzi

#endif
