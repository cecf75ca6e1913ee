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

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lzphi/error.hpp"
#include "lzphi/numerics.hpp"

namespace lzphi {

using complex = std::complex<double>;

/// Amplitudes whose squared norm is further than this from 1 are rejected
/// unless the caller asks for normalization.
inline constexpr double normalization_tolerance = 1e-6;

enum class Family { Circular, Rotor, Spherical, Pendulum };

constexpr const char *to_string(Family f) noexcept {
    switch (f) {
    case Family::Circular: return "circular";
    case Family::Rotor: return "rotor";
    case Family::Spherical: return "spherical";
    case Family::Pendulum: return "pendulum";
    }
    return "?";
}

namespace detail {

inline void require_positive(double value, const char *what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a positive finite number");
    }
}

// Returns the scale factor to apply to amplitudes with the given squared norm.
inline double normalization_scale(double norm2, bool normalize) {
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw Error(ErrorCode::NotNormalized, "amplitudes have zero or non-finite norm");
    }
    if (normalize) {
        return 1.0 / std::sqrt(norm2);
    }
    if (std::abs(norm2 - 1.0) > normalization_tolerance) {
        throw Error(ErrorCode::NotNormalized,
                    "sum of |c_m|^2 is " + std::to_string(norm2) + "; set normalize=true to rescale");
    }
    return 1.0;
}

} // namespace detail

/// Single-m circular eigenstate e^{imφ}/sqrt(2π) on [0, 2π].
class CircularState {
public:
    explicit CircularState(int m, double hbar = 1.0) : m_(m), hbar_(hbar) {
        detail::require_positive(hbar, "hbar");
    }

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }

    friend bool operator==(const CircularState &, const CircularState &) = default;

private:
    int m_;
    double hbar_;
};

/// Finite superposition of circular eigenstates.
class RotorSuperposition {
public:
    static RotorSuperposition make(std::map<int, complex> coefficients, double hbar = 1.0,
                                   bool normalize = false) {
        detail::require_positive(hbar, "hbar");
        std::map<int, complex> kept;
        double norm2 = 0.0;
        for (const auto &[m, c] : coefficients) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw Error(ErrorCode::InvalidArgument, "non-finite rotor coefficient");
            }
            if (c != complex{}) {
                kept.emplace(m, c);
                norm2 += std::norm(c);
            }
        }
        const double scale = detail::normalization_scale(norm2, normalize);
        if (scale != 1.0) {
            for (auto &entry : kept) {
                entry.second *= scale;
            }
        }
        return RotorSuperposition(std::move(kept), hbar);
    }

    [[nodiscard]] const std::map<int, complex> &coefficients() const noexcept { return coefficients_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }

    friend bool operator==(const RotorSuperposition &, const RotorSuperposition &) = default;

private:
    RotorSuperposition(std::map<int, complex> c, double hbar) : coefficients_(std::move(c)), hbar_(hbar) {}

    std::map<int, complex> coefficients_;
    double hbar_;
};

/// Fixed-l superposition sum_m c_m Y_lm; coefficients indexed m = -l..l.
class SphericalState {
public:
    static SphericalState make(int l, std::vector<complex> coefficients, double hbar = 1.0,
                               double inertia = 1.0, bool normalize = false) {
        if (l < 0) {
            throw Error(ErrorCode::IndexRange, "spherical state needs l >= 0");
        }
        if (coefficients.size() != static_cast<std::size_t>(2 * l + 1)) {
            throw Error(ErrorCode::IndexRange, "spherical state with l=" + std::to_string(l) + " needs " +
                                                   std::to_string(2 * l + 1) + " coefficients");
        }
        detail::require_positive(hbar, "hbar");
        detail::require_positive(inertia, "inertia");
        double norm2 = 0.0;
        for (const auto &c : coefficients) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw Error(ErrorCode::InvalidArgument, "non-finite spherical coefficient");
            }
            norm2 += std::norm(c);
        }
        const double scale = detail::normalization_scale(norm2, normalize);
        if (scale != 1.0) {
            for (auto &c : coefficients) {
                c *= scale;
            }
        }
        return SphericalState(l, std::move(coefficients), hbar, inertia);
    }

    [[nodiscard]] int l() const noexcept { return l_; }
    [[nodiscard]] const std::vector<complex> &coefficients() const noexcept { return coefficients_; }
    [[nodiscard]] complex coefficient(int m) const {
        if (std::abs(m) > l_) {
            throw Error(ErrorCode::IndexRange, "|m| > l");
        }
        return coefficients_[static_cast<std::size_t>(m + l_)];
    }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }
    [[nodiscard]] double inertia() const noexcept { return inertia_; }

    friend bool operator==(const SphericalState &, const SphericalState &) = default;

private:
    SphericalState(int l, std::vector<complex> c, double hbar, double inertia)
        : l_(l), coefficients_(std::move(c)), hbar_(hbar), inertia_(inertia) {}

    int l_;
    std::vector<complex> coefficients_;
    double hbar_;
    double inertia_;
};

/// Torsion-pendulum number eigenstate; φ ranges over the whole real line.
class PendulumState {
public:
    PendulumState(int n, double inertia = 1.0, double omega = 1.0, double hbar = 1.0)
        : n_(n), inertia_(inertia), omega_(omega), hbar_(hbar) {
        if (n < 0 || n > max_hermite_order) {
            throw Error(ErrorCode::IndexRange,
                        "pendulum state needs 0 <= n <= " + std::to_string(max_hermite_order));
        }
        detail::require_positive(inertia, "inertia");
        detail::require_positive(omega, "omega");
        detail::require_positive(hbar, "hbar");
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double inertia() const noexcept { return inertia_; }
    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }
    /// sqrt(Iω/ħ), the factor turning φ into the dimensionless ξ.
    [[nodiscard]] double xi_scale() const noexcept { return std::sqrt(inertia_ * omega_ / hbar_); }

    friend bool operator==(const PendulumState &, const PendulumState &) = default;

private:
    int n_;
    double inertia_;
    double omega_;
    double hbar_;
};

using State = std::variant<CircularState, RotorSuperposition, SphericalState, PendulumState>;

inline Family family_of(const State &state) noexcept {
    return static_cast<Family>(state.index());
}

inline double hbar_of(const State &state) noexcept {
    return std::visit([](const auto &s) { return s.hbar(); }, state);
}

/// True for the families living on φ in [0, 2π].
inline bool is_periodic(const State &state) noexcept {
    return family_of(state) != Family::Pendulum;
}

/// A point in the family's coordinate domain. θ is required for spherical states only.
struct Point {
    double phi = 0.0;
    std::optional<double> theta;
};

namespace detail {

inline void require_phi_in_circle(double phi) {
    if (!(phi >= 0.0 && phi <= two_pi)) {
        throw Error(ErrorCode::DomainError, "phi must lie in [0, 2pi]");
    }
}

inline complex circular_basis(int m, double phi) {
    return std::polar(1.0 / std::sqrt(two_pi), m * phi);
}

} // namespace detail

/// Complex amplitude of the state at a point.
inline complex wavefunction(const State &state, const Point &point) {
    return std::visit(
        [&](const auto &s) -> complex {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CircularState>) {
                detail::require_phi_in_circle(point.phi);
                return detail::circular_basis(s.m(), point.phi);
            } else if constexpr (std::is_same_v<T, RotorSuperposition>) {
                detail::require_phi_in_circle(point.phi);
                complex acc{};
                for (const auto &[m, c] : s.coefficients()) {
                    acc += c * detail::circular_basis(m, point.phi);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, SphericalState>) {
                detail::require_phi_in_circle(point.phi);
                if (!point.theta) {
                    throw Error(ErrorCode::DomainError, "spherical wavefunction needs a theta coordinate");
                }
                const double theta = *point.theta;
                if (!(theta >= 0.0 && theta <= pi)) {
                    throw Error(ErrorCode::DomainError, "theta must lie in [0, pi]");
                }
                complex acc{};
                for (int m = -s.l(); m <= s.l(); ++m) {
                    const complex c = s.coefficient(m);
                    if (c != complex{}) {
                        acc += c * theta_lm(s.l(), m, theta) * detail::circular_basis(m, point.phi);
                    }
                }
                return acc;
            } else {
                if (!std::isfinite(point.phi)) {
                    throw Error(ErrorCode::DomainError, "phi must be finite");
                }
                const double scale = s.xi_scale();
                const double xi = point.phi * scale;
                return std::sqrt(scale) * normalized_hermite(s.n(), xi) * std::exp(-0.5 * xi * xi);
            }
        },
        state);
}

/// (Ψ, Ψ)^{1/2} by the family's quadrature rule.
inline double norm(const State &state, const QuadratureSettings &quad = {}) {
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        // In ξ the squared amplitude is p_n(ξ)^2 exp(-ξ^2), so Gauss-Hermite is exact.
        const auto rule = gauss_hermite(quad.hermite_nodes);
        const double integral = rule.integrate([&](double xi) {
            const double v = normalized_hermite(p->n(), xi);
            return v * v;
        });
        return std::sqrt(integral);
    }
    const auto phi_rule = gauss_legendre(quad.phi_nodes, 0.0, two_pi);
    if (family_of(state) != Family::Spherical) {
        const double integral = phi_rule.integrate([&](double phi) { return std::norm(wavefunction(state, {phi, {}})); });
        return std::sqrt(integral);
    }
    const auto theta_rule = gauss_legendre(quad.theta_nodes, 0.0, pi);
    const double integral = theta_rule.integrate([&](double theta) {
        const double inner =
            phi_rule.integrate([&](double phi) { return std::norm(wavefunction(state, {phi, theta})); });
        return inner * std::sin(theta);
    });
    return std::sqrt(integral);
}

/// Closed-form energy: ħω(n + 1/2) for the pendulum, ħ² l(l+1)/(2I) for the
/// sphere. Circular and rotor states carry no unique energy (nullopt).
inline std::optional<double> energy(const State &state) {
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        return p->hbar() * p->omega() * (p->n() + 0.5);
    }
    if (const auto *s = std::get_if<SphericalState>(&state)) {
        return s->hbar() * s->hbar() * s->l() * (s->l() + 1.0) / (2.0 * s->inertia());
    }
    return std::nullopt;
}

/// Rescales the squared norm to one; idempotent on normalized states.
inline State normalized(const State &state) {
    return std::visit(
        [](const auto &s) -> State {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RotorSuperposition>) {
                return RotorSuperposition::make(s.coefficients(), s.hbar(), true);
            } else if constexpr (std::is_same_v<T, SphericalState>) {
                return SphericalState::make(s.l(), s.coefficients(), s.hbar(), s.inertia(), true);
            } else {
                return s;
            }
        },
        state);
}

/// Same physical state with ħ replaced; used for scale sweeps.
inline State with_hbar(const State &state, double hbar) {
    return std::visit(
        [hbar](const auto &s) -> State {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CircularState>) {
                return CircularState(s.m(), hbar);
            } else if constexpr (std::is_same_v<T, RotorSuperposition>) {
                return RotorSuperposition::make(s.coefficients(), hbar, false);
            } else if constexpr (std::is_same_v<T, SphericalState>) {
                return SphericalState::make(s.l(), s.coefficients(), hbar, s.inertia(), false);
            } else {
                return PendulumState(s.n(), s.inertia(), s.omega(), hbar);
            }
        },
        state);
}

} // namespace lzphi
