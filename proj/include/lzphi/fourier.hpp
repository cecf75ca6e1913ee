// Copyright 2026 The lzphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>

#include "lzphi/error.hpp"
#include "lzphi/numerics.hpp"
#include "lzphi/states.hpp"

namespace lzphi {

/// Periodic Fourier coefficients b_m. For spherical states the coefficients
/// depend on θ and are kept in factor form b_m(θ) = c_m Θ_lm(θ).
class FourierCoefficients {
public:
    FourierCoefficients(std::map<int, complex> values, std::optional<int> l = std::nullopt)
        : values_(std::move(values)), l_(l) {}

    [[nodiscard]] bool theta_dependent() const noexcept { return l_.has_value(); }
    [[nodiscard]] std::optional<int> l() const noexcept { return l_; }
    [[nodiscard]] const std::map<int, complex> &values() const noexcept { return values_; }

    /// b_m, or the amplitude c_m of the factor form.
    [[nodiscard]] complex operator[](int m) const {
        const auto it = values_.find(m);
        return it == values_.end() ? complex{} : it->second;
    }

    /// b_m(θ); for θ-independent coefficients this is b_m.
    [[nodiscard]] complex at(int m, double theta) const {
        if (!l_) return (*this)[m];
        if (std::abs(m) > *l_) return {};
        return (*this)[m] * theta_lm(*l_, m, theta);
    }

    /// Σ_m b_m e^{imφ}/sqrt(2π), optionally at a polar angle.
    [[nodiscard]] complex reconstruct(double phi, std::optional<double> theta = std::nullopt) const {
        if (l_ && !theta) {
            throw Error(ErrorCode::DomainError, "theta-dependent coefficients need a theta coordinate");
        }
        complex acc{};
        for (const auto &[m, b] : values_) {
            const complex bm = l_ ? at(m, *theta) : b;
            acc += bm * std::polar(1.0 / std::sqrt(two_pi), m * phi);
        }
        return acc;
    }

private:
    std::map<int, complex> values_;
    std::optional<int> l_;
};

/// Expansion coefficients of a periodic state; exact for basis-expanded states.
inline FourierCoefficients coefficients(const State &state) {
    if (const auto *c = std::get_if<CircularState>(&state)) {
        return FourierCoefficients({{c->m(), complex(1.0, 0.0)}});
    }
    if (const auto *r = std::get_if<RotorSuperposition>(&state)) {
        return FourierCoefficients(r->coefficients());
    }
    if (const auto *s = std::get_if<SphericalState>(&state)) {
        std::map<int, complex> values;
        for (int m = -s->l(); m <= s->l(); ++m) values.emplace(m, s->coefficient(m));
        return FourierCoefficients(std::move(values), s->l());
    }
    throw Error(ErrorCode::FamilyMismatch, "pendulum states have no periodic coefficients; use line_transform");
}

/// b_m = (2π)^{-1/2} ∫_0^{2π} Ψ e^{-imφ} dφ by Gauss-Legendre, at a fixed θ for
/// spherical states.
inline complex coefficient_by_quadrature(const State &state, int m, std::optional<double> theta = std::nullopt,
                                         const QuadratureSettings &quad = {}) {
    if (!is_periodic(state)) {
        throw Error(ErrorCode::FamilyMismatch, "pendulum states have no periodic coefficients; use line_transform");
    }
    const auto rule = gauss_legendre(quad.phi_nodes, 0.0, two_pi);
    const complex integral =
        rule.integrate([&](double phi) { return wavefunction(state, {phi, theta}) * std::polar(1.0, -m * phi); });
    return integral / std::sqrt(two_pi);
}

/// Ψ̃(k) = (2π)^{-1/2} ∫ Ψ(φ) e^{-ikφ} dφ for a pendulum state. With
/// ξ = φ sqrt(Iω/ħ) = sqrt(2) u the Gaussian envelope becomes exp(-u²) and the
/// integral is done by Gauss-Hermite.
inline complex line_transform(const State &state, double k, const QuadratureSettings &quad = {}) {
    const auto *p = std::get_if<PendulumState>(&state);
    if (!p) {
        throw Error(ErrorCode::FamilyMismatch, "line_transform needs a pendulum state");
    }
    const double scale = p->xi_scale();
    const double eta = k / scale;
    const auto rule = gauss_hermite(quad.hermite_nodes);
    const complex integral = rule.integrate([&](double u) {
        const double xi = std::sqrt(2.0) * u;
        return normalized_hermite(p->n(), xi) * std::polar(1.0, -eta * xi);
    });
    return integral * std::sqrt(2.0) / std::sqrt(two_pi * scale);
}

/// Second central moment of k in |Ψ̃(k)|²: ⟨Lz²⟩/ħ² = (Iω/ħ)(n + 1/2).
inline double k_variance(const PendulumState &p) {
    return p.inertia() * p.omega() / p.hbar() * (p.n() + 0.5);
}

/// ⟨(k-⟨k⟩)²⟩ ⟨(φ-⟨φ⟩)²⟩ = (n + 1/2)², never below 1/4.
inline double width_product(const PendulumState &p) {
    const double phi_variance = p.hbar() / (p.inertia() * p.omega()) * (p.n() + 0.5);
    return k_variance(p) * phi_variance;
}

/// |coefficient-side norm - position-side norm| for any family. Periodic
/// families compare Σ|b_m|² (integrated over θ for spherical states) with the
/// quadrature of |Ψ|²; the pendulum compares ∫|Ψ̃|²dk with ∫|Ψ|²dφ.
inline double parseval_check(const State &state, const QuadratureSettings &quad = {}) {
    const double position = std::pow(norm(state, quad), 2);
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        // |Ψ̃(sη)|² = p_n(η)² e^{-η²}/s, so the k integral is Gauss-Hermite in η.
        // A short rule keeps every node inside the well-resolved part of Ψ̃.
        const double scale = p->xi_scale();
        const int outer = std::min(quad.hermite_nodes, p->n() + 16);
        const auto rule = gauss_hermite(outer);
        double spectral = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double eta = rule.nodes[i];
            spectral += rule.weights[i] * std::exp(eta * eta) * std::norm(line_transform(state, scale * eta, quad));
        }
        return std::abs(spectral * scale - position);
    }
    const auto coeffs = coefficients(state);
    double spectral = 0.0;
    if (const auto l = coeffs.l()) {
        const auto rule = gauss_legendre(quad.theta_nodes, 0.0, pi);
        for (int m = -*l; m <= *l; ++m) {
            spectral += rule.integrate([&](double theta) { return std::norm(coeffs.at(m, theta)) * std::sin(theta); });
        }
    } else {
        for (const auto &[m, b] : coeffs.values()) spectral += std::norm(b);
    }
    return std::abs(spectral - position);
}

} // namespace lzphi
