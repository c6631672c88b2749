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
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mzi/errors.h"

namespace mzi {

namespace {

constexpr int kPhaseGridPoints = 1024;
constexpr double kPhaseTolerance = 1e-10;
constexpr double kStationaryThreshold = 1e-12;
// Below this |det(sigma) - 1| a two-mode state is treated as pure.
constexpr double kPurityTol = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_port(const GaussianState &state, int mode) {
    if (mode < 1 || static_cast<size_t>(mode) > state.n_modes()) {
        throw std::invalid_argument("measurement port " + std::to_string(mode) + " does not exist");
    }
}

int require_port(const std::optional<int> &mode) {
    if (!mode) {
        throw std::invalid_argument("measurement port is unresolved; call resolve_port first");
    }
    return *mode;
}

PhasePolynomial photon_symbol(int mode) {
    const int x = 2 * (mode - 1);
    auto px = PhasePolynomial::coordinate(x);
    auto pp = PhasePolynomial::coordinate(x + 1);
    return (px * px + pp * pp) * 0.5;
}

// Weyl symbol of a polynomial observable, the constant that maps its Wigner
// mean onto <O>, and the ordering correction added to its Wigner variance.
struct PolynomialObservable {
    PhasePolynomial symbol;
    double mean_offset = 0.0;
    double variance_offset = 0.0;
};

PolynomialObservable polynomial_observable(const GaussianState &state, const MeasurementScheme &scheme) {
    return std::visit(
        overloaded{
            [&](const Intensity &s) {
                const int m = require_port(s.mode);
                check_port(state, m);
                // <n> = <h> - 1/2 and <n^2> = <h^2 - h>.
                return PolynomialObservable{photon_symbol(m), -0.5, -0.25};
            },
            [&](const IntensityDifference &) {
                if (state.n_modes() < 2) {
                    throw std::invalid_argument("intensity difference needs two modes");
                }
                // Weyl symbol of (n1 - n2)^2 is (h1 - h2)^2 - 1/2.
                return PolynomialObservable{photon_symbol(1) - photon_symbol(2), 0.0, -0.5};
            },
            [&](const Homodyne &s) {
                check_port(state, s.mode);
                if (!(s.angle >= 0.0 && s.angle < 2.0 * std::numbers::pi)) {
                    throw std::invalid_argument("homodyne angle must lie in [0, 2 pi)");
                }
                const int x = 2 * (s.mode - 1);
                auto quad = PhasePolynomial::coordinate(x) * std::cos(s.angle) +
                            PhasePolynomial::coordinate(x + 1) * std::sin(s.angle);
                return PolynomialObservable{quad, 0.0, 0.0};
            },
            [&](const Parity &) -> PolynomialObservable {
                throw std::logic_error("parity is not a polynomial observable");
            },
        },
        scheme);
}

// Substitutes X = mean + Y, returning a polynomial in Y.
PhasePolynomial centered(const PhasePolynomial &poly, const Vector &mean) {
    PhasePolynomial result;
    for (const auto &[coords, coef] : poly.terms()) {
        PhasePolynomial term = PhasePolynomial::constant(coef);
        for (int c : coords) {
            term = term * (PhasePolynomial::coordinate(c) + PhasePolynomial::constant(mean(c)));
        }
        result = result + term;
    }
    return result;
}

double polynomial_variance(const GaussianState &state, const PhasePolynomial &poly) {
    // Centering avoids cancellation between large raw moments of bright modes.
    const auto zero_mean = GaussianState::unchecked(Vector::Zero(state.mean().size()), state.cov());
    const PhasePolynomial q = centered(poly, state.mean());
    const double m1 = polynomial_expectation(zero_mean, q);
    const double m2 = polynomial_expectation(zero_mean, q * q);
    return m2 - m1 * m1;
}

double polynomial_derivative(const StateWithDerivative &out, const PhasePolynomial &poly) {
    const Vector &d = out.state.mean();
    const Vector &dd = out.d_mean_d_phi;
    const Matrix &ds = out.d_cov_d_phi;
    double total = 0.0;
    for (const auto &[coords, coef] : poly.terms()) {
        switch (coords.size()) {
            case 0:
                break;
            case 1:
                total += coef * dd(coords[0]);
                break;
            case 2: {
                const int i = coords[0];
                const int j = coords[1];
                total += coef * (0.5 * ds(i, j) + dd(i) * d(j) + d(i) * dd(j));
                break;
            }
            default:
                throw std::logic_error("observable derivative only defined up to degree 2");
        }
    }
    return total;
}

// Parity of one port, pi W_m(0) = exp(-q) / sqrt(det sigma_m), in a form that
// keeps det(sigma_m) - 1 accurate when the reduced state is nearly pure.
struct ParityParts {
    double q;
    double det_minus_one;
    Eigen::Matrix2d block;
    Eigen::Vector2d mean;
};

ParityParts parity_parts(const GaussianState &state, int mode) {
    check_port(state, mode);
    const int k = 2 * (mode - 1);
    ParityParts p;
    p.block = state.cov().block<2, 2>(k, k);
    p.mean = state.mean().segment<2>(k);
    if (state.n_modes() == 2 && std::abs(state.cov().determinant() - 1.0) <= kPurityTol) {
        // Pure two-mode state: det A = det B = 1 - det C for the off-diagonal block C.
        p.det_minus_one = -state.cov().block<2, 2>(0, 2).determinant();
    } else {
        p.det_minus_one = p.block.determinant() - 1.0;
    }
    const double det = 1.0 + p.det_minus_one;
    if (!(det > 0.0)) {
        throw NumericalDomainError("reduced covariance is singular");
    }
    const auto &a = p.block;
    const double dx = p.mean(0);
    const double dp = p.mean(1);
    p.q = (a(1, 1) * dx * dx - 2.0 * a(0, 1) * dx * dp + a(0, 0) * dp * dp) / det;
    return p;
}

double parity_expectation(const GaussianState &state, int mode) {
    const auto p = parity_parts(state, mode);
    return std::exp(-p.q - 0.5 * std::log1p(p.det_minus_one));
}

double parity_variance(const GaussianState &state, int mode) {
    // <Pi^2> = 1, so Var = 1 - exp(-2q) / det.
    const auto p = parity_parts(state, mode);
    return -std::expm1(-2.0 * p.q - std::log1p(p.det_minus_one));
}

double parity_derivative(const StateWithDerivative &out, int mode) {
    const auto p = parity_parts(out.state, mode);
    const int k = 2 * (mode - 1);
    const Eigen::Matrix2d da = out.d_cov_d_phi.block<2, 2>(k, k);
    const Eigen::Vector2d dd = out.d_mean_d_phi.segment<2>(k);
    const auto &a = p.block;
    const double dx = p.mean(0);
    const double dp = p.mean(1);
    const double det = 1.0 + p.det_minus_one;

    const double numer = a(1, 1) * dx * dx - 2.0 * a(0, 1) * dx * dp + a(0, 0) * dp * dp;
    const double d_numer = da(1, 1) * dx * dx + 2.0 * a(1, 1) * dx * dd(0) - 2.0 * da(0, 1) * dx * dp -
                           2.0 * a(0, 1) * (dd(0) * dp + dx * dd(1)) + da(0, 0) * dp * dp +
                           2.0 * a(0, 0) * dp * dd(1);
    const double d_det = da(0, 0) * a(1, 1) + a(0, 0) * da(1, 1) - 2.0 * a(0, 1) * da(0, 1);
    const double dq = d_numer / det - numer * d_det / (det * det);
    const double parity = std::exp(-p.q - 0.5 * std::log1p(p.det_minus_one));
    return parity * (-dq - 0.5 * d_det / det);
}

double wrap_phase(double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) {
        w += two_pi;
    }
    return w >= two_pi ? 0.0 : w;
}

double variance_or_inf(const MziConfig &config, const MeasurementScheme &scheme) {
    try {
        return phase_variance_at(mzi_output(config), scheme);
    } catch (const StationaryPointError &) {
        return std::numeric_limits<double>::infinity();
    }
}

PhaseSensitivity optimal_phase_resolved(const MziConfig &config, const MeasurementScheme &scheme) {
    const double step = 2.0 * std::numbers::pi / kPhaseGridPoints;
    int best = -1;
    double best_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kPhaseGridPoints; k++) {
        const double v = variance_or_inf(config.with_phi(k * step), scheme);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    if (best < 0) {
        throw DegenerateConfigurationError("every phase on the search grid is stationary for " + scheme_name(scheme));
    }

    // Golden-section search on the bracket around the best grid point.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = (best - 1) * step;
    double b = (best + 1) * step;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = variance_or_inf(config.with_phi(c), scheme);
    double fd = variance_or_inf(config.with_phi(d), scheme);
    while (b - a > kPhaseTolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = variance_or_inf(config.with_phi(c), scheme);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = variance_or_inf(config.with_phi(d), scheme);
        }
    }
    const double mid = 0.5 * (a + b);
    const double f_mid = variance_or_inf(config.with_phi(mid), scheme);
    if (f_mid <= best_value) {
        return PhaseSensitivity{f_mid, wrap_phase(mid), scheme};
    }
    return PhaseSensitivity{best_value, best * step, scheme};
}

struct PortChoice {
    MeasurementScheme scheme;
    std::optional<PhaseSensitivity> optimum;
};

PortChoice choose_port(const MziConfig &config, const MeasurementScheme &scheme) {
    if (port_resolved(scheme)) {
        return PortChoice{scheme, std::nullopt};
    }
    auto with_mode = [&](int m) -> MeasurementScheme {
        if (std::holds_alternative<Intensity>(scheme)) {
            return Intensity{m};
        }
        return Parity{m};
    };
    std::optional<PhaseSensitivity> first;
    std::optional<PhaseSensitivity> second;
    try {
        first = optimal_phase_resolved(config, with_mode(1));
    } catch (const DegenerateConfigurationError &) {
    }
    try {
        second = optimal_phase_resolved(config, with_mode(2));
    } catch (const DegenerateConfigurationError &) {
    }
    if (!first && !second) {
        throw DegenerateConfigurationError("no output port gives a defined phase variance for " + scheme_name(scheme));
    }
    if (!first || (second && second->variance < first->variance * (1.0 - 1e-9))) {
        return PortChoice{with_mode(2), second};
    }
    return PortChoice{with_mode(1), first};
}

}  // namespace

std::string scheme_name(const MeasurementScheme &scheme) {
    auto with_port = [](const char *base, const std::optional<int> &mode) {
        std::string s = base;
        if (mode) {
            s += ":" + std::to_string(*mode);
        }
        return s;
    };
    return std::visit(
        overloaded{
            [&](const Intensity &s) { return with_port("intensity", s.mode); },
            [](const IntensityDifference &) { return std::string("intensity-difference"); },
            [](const Homodyne &s) {
                std::string name = "homodyne:" + std::to_string(s.mode);
                if (s.angle != 0.0) {
                    std::ostringstream angle;
                    angle.precision(12);
                    angle << s.angle;
                    name += ":" + angle.str();
                }
                return name;
            },
            [&](const Parity &s) { return with_port("parity", s.mode); },
        },
        scheme);
}

MeasurementScheme parse_scheme(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    if (parts.empty() || parts[0].empty()) {
        throw std::invalid_argument("empty measurement scheme");
    }
    auto port_at = [&](size_t i) -> std::optional<int> {
        if (parts.size() <= i) {
            return std::nullopt;
        }
        if (parts[i] == "1" || parts[i] == "2") {
            return std::stoi(parts[i]);
        }
        throw std::invalid_argument("invalid port '" + parts[i] + "' in scheme '" + text + "'");
    };
    const std::string &name = parts[0];
    if (name == "intensity" && parts.size() <= 2) {
        return Intensity{port_at(1)};
    }
    if ((name == "intensity-difference" || name == "diff") && parts.size() == 1) {
        return IntensityDifference{};
    }
    if (name == "parity" && parts.size() <= 2) {
        return Parity{port_at(1)};
    }
    if (name == "homodyne" && parts.size() <= 3) {
        Homodyne h;
        h.mode = port_at(1).value_or(1);
        if (parts.size() == 3) {
            size_t used = 0;
            h.angle = std::stod(parts[2], &used);
            if (used != parts[2].size() || !(h.angle >= 0.0 && h.angle < 2.0 * std::numbers::pi)) {
                throw std::invalid_argument("homodyne angle must lie in [0, 2 pi)");
            }
        }
        return h;
    }
    throw std::invalid_argument("unknown measurement scheme '" + text + "'");
}

bool port_resolved(const MeasurementScheme &scheme) {
    if (const auto *s = std::get_if<Intensity>(&scheme)) {
        return s->mode.has_value();
    }
    if (const auto *s = std::get_if<Parity>(&scheme)) {
        return s->mode.has_value();
    }
    return true;
}

double expectation(const GaussianState &state, const MeasurementScheme &scheme) {
    if (const auto *s = std::get_if<Parity>(&scheme)) {
        return parity_expectation(state, require_port(s->mode));
    }
    const auto obs = polynomial_observable(state, scheme);
    return polynomial_expectation(state, obs.symbol) + obs.mean_offset;
}

double variance(const GaussianState &state, const MeasurementScheme &scheme) {
    double v;
    if (const auto *s = std::get_if<Parity>(&scheme)) {
        v = parity_variance(state, require_port(s->mode));
    } else {
        const auto obs = polynomial_observable(state, scheme);
        v = polynomial_variance(state, obs.symbol) + obs.variance_offset;
    }
    // Rounding can push an exactly-zero variance slightly negative.
    return std::max(v, 0.0);
}

namespace {

// Photon-count variances written in terms of the excess noise E = cov - I:
//   Var(n_m) = (2 tr E_m + tr E_m^2) / 8 + (|d_m|^2 + d_m^T E_m d_m) / 2,
//   Cov(n_1, n_2) = |E_12|^2 / 8 + d_1^T E_12 d_2 / 2.
// Unlike the moment expansion these carry no constant that must cancel
// against vacuum noise, which matters at dark fringes.
double photon_variance(const Vector &d, const Matrix &e, int mode) {
    const int k = 2 * (mode - 1);
    const Eigen::Matrix2d em = e.block<2, 2>(k, k);
    const Eigen::Vector2d dm = d.segment<2>(k);
    return (2.0 * em.trace() + (em * em).trace()) / 8.0 + (dm.squaredNorm() + dm.dot(em * dm)) / 2.0;
}

double photon_covariance(const Vector &d, const Matrix &e) {
    const Eigen::Matrix2d e12 = e.block<2, 2>(0, 2);
    return e12.squaredNorm() / 8.0 + d.segment<2>(0).dot(e12 * d.segment<2>(2)) / 2.0;
}

double output_variance(const StateWithDerivative &output, const MeasurementScheme &scheme) {
    const Vector &d = output.state.mean();
    const Matrix &e = output.cov_excess;
    double v;
    if (const auto *s = std::get_if<Intensity>(&scheme)) {
        const int m = require_port(s->mode);
        check_port(output.state, m);
        v = photon_variance(d, e, m);
    } else if (std::holds_alternative<IntensityDifference>(scheme) && output.state.n_modes() == 2) {
        v = photon_variance(d, e, 1) + photon_variance(d, e, 2) - 2.0 * photon_covariance(d, e);
    } else {
        return variance(output.state, scheme);
    }
    return std::max(v, 0.0);
}

}  // namespace

double expectation_derivative(const StateWithDerivative &output, const MeasurementScheme &scheme) {
    if (const auto *s = std::get_if<Parity>(&scheme)) {
        return parity_derivative(output, require_port(s->mode));
    }
    const auto obs = polynomial_observable(output.state, scheme);
    return polynomial_derivative(output, obs.symbol);
}

double phase_variance_at(const StateWithDerivative &output, const MeasurementScheme &scheme) {
    const double slope = expectation_derivative(output, scheme);
    const double var = output_variance(output, scheme);
    const double mean = expectation(output.state, scheme);
    const double scale = std::max(1.0, std::sqrt(var + mean * mean));
    if (!(std::abs(slope) >= kStationaryThreshold * scale)) {
        throw StationaryPointError("d<O>/dphi vanishes for " + scheme_name(scheme));
    }
    return var / (slope * slope);
}

MeasurementScheme resolve_port(const MziConfig &config, const MeasurementScheme &scheme) {
    return choose_port(config, scheme).scheme;
}

PhaseSensitivity phase_variance(const MziConfig &config, const MeasurementScheme &scheme) {
    const MeasurementScheme resolved = resolve_port(config, scheme);
    return PhaseSensitivity{phase_variance_at(mzi_output(config), resolved), config.phi, resolved};
}

PhaseSensitivity optimal_phase(const MziConfig &config, const MeasurementScheme &scheme) {
    config.validate();
    auto choice = choose_port(config, scheme);
    if (choice.optimum) {
        return *choice.optimum;
    }
    return optimal_phase_resolved(config, choice.scheme);
}

}  // namespace mzi
