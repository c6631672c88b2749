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

#ifndef MZI_INTERFEROMETER_H
#define MZI_INTERFEROMETER_H

#include "mzi/gaussian_state.h"

namespace mzi {

/// Real 2N x 2N matrix acting on (x1, p1, x2, p2, ...) and preserving the
/// symplectic form: S * Omega * S^T = Omega (checked to 1e-12).
class SymplecticTransform {
   public:
    explicit SymplecticTransform(Matrix matrix);

    static SymplecticTransform identity(size_t n_modes);

    const Matrix &matrix() const {
        return matrix_;
    }
    size_t n_modes() const {
        return static_cast<size_t>(matrix_.rows()) / 2;
    }

    /// Composition: (a * b) applies b first, then a.
    SymplecticTransform operator*(const SymplecticTransform &other) const;

   private:
    Matrix matrix_;
};

/// Largest entry of |S Omega S^T - Omega|.
double symplectic_defect(const Matrix &s);

/// Balanced two-mode beam splitter:
///   1/sqrt2 [[1,0,1,0],[0,1,0,1],[1,0,-1,0],[0,1,0,-1]].
SymplecticTransform beamsplitter_half();

/// Symmetric phase shift: mode 1 rotated by +phi/2, mode 2 by -phi/2.
SymplecticTransform phase_shift(double phi);

/// d/dphi of phase_shift(phi). Not symplectic.
Matrix phase_shift_derivative(double phi);

/// Full interferometer BS * PS(phi) * BS.
SymplecticTransform mzi_transform(double phi);

/// mean -> S d, cov -> S sigma S^T.
GaussianState apply_symplectic(const GaussianState &state, const SymplecticTransform &s);

/// Equal linear loss on every mode: cov -> (1-L) cov + L I, mean -> sqrt(1-L) mean.
GaussianState apply_loss(const GaussianState &state, double loss);

/// Thermal admixture on every mode through a beam splitter of mixing ratio
/// t_mix fed by a thermal state with n_th mean photons:
/// cov -> (1-t_mix) cov + t_mix (2 n_th + 1) I, mean -> sqrt(1-t_mix) mean.
GaussianState apply_thermal(const GaussianState &state, double t_mix, double n_th);

/// One experiment: coherent |alpha e^{i theta}> in port 1 and squeezed vacuum
/// (r, delta) in port 2, unknown phase phi, then loss and thermal noise on both
/// output modes.
struct MziConfig {
    double alpha_sq = 500.0;
    double theta = 0.0;
    double r = 1.0;
    double delta = 0.0;
    double phi = 0.0;
    /// Combined interferometer and detector loss L in [0, 1].
    double loss = 0.0;
    /// Thermal beam-splitter mixing ratio in [0, 1].
    double thermal_mix = 0.0;
    /// Mean thermal photons injected per mode.
    double n_th = 0.0;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;

    MziConfig with_phi(double new_phi) const {
        MziConfig c = *this;
        c.phi = new_phi;
        return c;
    }
};

/// Output state together with its exact phase derivatives.
struct StateWithDerivative {
    GaussianState state;
    Vector d_mean_d_phi;
    Matrix d_cov_d_phi;
    /// cov - I, propagated separately so that it keeps full relative precision
    /// when the output is close to vacuum noise.
    Matrix cov_excess;
};

/// Two-mode input state: coherent (x) squeezed vacuum.
GaussianState mzi_input(const MziConfig &config);

/// Propagates the input through the interferometer and noise channels. The
/// channels are phi-independent affine maps, so derivatives pass through them
/// by their linear part.
StateWithDerivative mzi_output(const MziConfig &config);

}  // namespace mzi

#endif
