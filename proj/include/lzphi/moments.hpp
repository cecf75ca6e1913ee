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
#include <optional>
#include <vector>

#include "lzphi/error.hpp"
#include "lzphi/observables.hpp"
#include "lzphi/states.hpp"

namespace lzphi {

/// First- and second-order parameters of one observable in one state.
struct MomentSet {
    double mean = 0.0;
    double std_dev = 0.0;
    Provenance provenance = Provenance::Analytic;
};

/// C(A, B) = (δAΨ, δBΨ) together with its real (anticommutator) part.
struct Correlation {
    complex value;
    double hermitized = 0.0;
};

inline constexpr int max_correlation_order = 6;

namespace detail {

// Vectors in the oscillator basis, indexed by n from 0.
using OscVector = std::vector<complex>;

inline OscVector apply_pendulum(const ObservableKind &kind, const OscVector &v, const BasisDescriptor &b) {
    OscVector w(v.size() + 2, complex{});
    switch (kind.op) {
    case Observable::Lz: {
        const double tau = pendulum_lz_scale(b);
        for (std::size_t k = 0; k < v.size(); ++k) {
            w[k + 1] += complex(0.0, tau * std::sqrt(k + 1.0)) * v[k];
            if (k > 0) w[k - 1] += complex(0.0, -tau * std::sqrt(static_cast<double>(k))) * v[k];
        }
        return w;
    }
    case Observable::Phi:
    case Observable::Chi: {
        const double sigma = pendulum_phi_scale(b);
        for (std::size_t k = 0; k < v.size(); ++k) {
            w[k + 1] += sigma * std::sqrt(k + 1.0) * v[k];
            if (k > 0) w[k - 1] += sigma * std::sqrt(static_cast<double>(k)) * v[k];
            if (kind.op == Observable::Chi) w[k] += two_pi * kind.N * v[k];
        }
        return w;
    }
    case Observable::PhiSquared: {
        const auto once = apply_pendulum(ObservableKind::phi(), v, b);
        auto twice = apply_pendulum(ObservableKind::phi(), once, b);
        twice.resize(w.size());
        return twice;
    }
    default: break;
    }
    throw Error(ErrorCode::FamilyMismatch, "observable " + to_string(kind) + " is not defined for pendulum states");
}

// Applies a polynomial in φ (no θ, no harmonics) by Horner's scheme.
inline OscVector apply_pendulum(const AngularFunction &f, const OscVector &v, const BasisDescriptor &b) {
    if (!f.is_polynomial_in_phi()) {
        throw Error(ErrorCode::FamilyMismatch, "only polynomials in phi act on pendulum states");
    }
    int degree = 0;
    for (const auto &[m, c] : f.terms()) degree = std::max(degree, m.phi_power);
    std::vector<complex> coeff(static_cast<std::size_t>(degree) + 1, complex{});
    for (const auto &[m, c] : f.terms()) coeff[static_cast<std::size_t>(m.phi_power)] += c;
    OscVector acc(v.size(), complex{});
    for (int k = degree; k >= 0; --k) {
        acc = apply_pendulum(ObservableKind::phi(), acc, b);
        acc.resize(v.size() + 2 * static_cast<std::size_t>(degree - k), complex{});
        for (std::size_t i = 0; i < v.size(); ++i) acc[i] += coeff[static_cast<std::size_t>(k)] * v[i];
    }
    return acc;
}

inline complex inner(const OscVector &a, const OscVector &b) {
    complex acc{};
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline OscVector pendulum_ket(const PendulumState &p) {
    OscVector v(static_cast<std::size_t>(p.n()) + 1, complex{});
    v.back() = 1.0;
    return v;
}

inline OscVector apply_centered_power(const ObservableKind &kind, double mean, int power, OscVector v,
                                      const BasisDescriptor &b) {
    for (int i = 0; i < power; ++i) {
        auto w = apply_pendulum(kind, v, b);
        for (std::size_t k = 0; k < v.size(); ++k) w[k] -= mean * v[k];
        v = std::move(w);
    }
    return v;
}

// Expectation machinery for the rotor and spherical bases.
class ExpansionContext {
public:
    ExpansionContext(const State &state, const QuadratureSettings &quad) : e_(expansion_of(state)) {
        if (e_.spherical()) tables_.emplace(e_.l, quad.theta_nodes);
    }

    [[nodiscard]] const Expansion &expansion() const noexcept { return e_; }
    [[nodiscard]] bool spherical() const noexcept { return e_.spherical(); }

    [[nodiscard]] complex element(const AngularFunction &f, int m, int m1) const {
        return tables_ ? spherical_element(f, *tables_, m, m1) : rotor_element(f, m, m1);
    }

    // Σ c*_i c_j F_ij
    [[nodiscard]] complex expectation(const AngularFunction &f) const {
        complex acc{};
        for (std::size_t i = 0; i < e_.ms.size(); ++i) {
            for (std::size_t j = 0; j < e_.ms.size(); ++j) {
                acc += std::conj(e_.c[i]) * e_.c[j] * element(f, e_.ms[i], e_.ms[j]);
            }
        }
        return acc;
    }

    [[nodiscard]] double lz_mean() const {
        double acc = 0.0;
        for (std::size_t i = 0; i < e_.ms.size(); ++i) acc += std::norm(e_.c[i]) * e_.hbar * e_.ms[i];
        return acc;
    }

    [[nodiscard]] double mean(const ObservableKind &kind) const {
        if (kind.op == Observable::Lz) return lz_mean();
        return expectation(multiplicative_form(kind)).real();
    }

    // ((δA)^r Ψ, (δB)^s Ψ), exact in the finite expansion.
    [[nodiscard]] complex higher(const ObservableKind &a, const ObservableKind &b, int r, int s) const {
        const auto &ms = e_.ms;
        const auto &c = e_.c;
        const double a_mean = mean(a);
        const double b_mean = mean(b);
        auto centered = [&](const ObservableKind &k, double mu, int power) {
            return (multiplicative_form(k) - AngularFunction::constant(mu)).pow(power);
        };
        auto lz_shift = [&](std::size_t i, double mu, int power) {
            return std::pow(e_.hbar * ms[i] - mu, power);
        };
        complex acc{};
        if (!a.is_multiplicative() && !b.is_multiplicative()) {
            for (std::size_t i = 0; i < ms.size(); ++i) acc += std::norm(c[i]) * lz_shift(i, a_mean, r + s);
            return acc;
        }
        if (!a.is_multiplicative()) {
            const auto fb = centered(b, b_mean, s);
            for (std::size_t i = 0; i < ms.size(); ++i)
                for (std::size_t j = 0; j < ms.size(); ++j)
                    acc += std::conj(c[i]) * lz_shift(i, a_mean, r) * element(fb, ms[i], ms[j]) * c[j];
            return acc;
        }
        if (!b.is_multiplicative()) {
            const auto fa = centered(a, a_mean, r);
            for (std::size_t i = 0; i < ms.size(); ++i)
                for (std::size_t j = 0; j < ms.size(); ++j)
                    acc += std::conj(c[i]) * element(fa, ms[i], ms[j]) * lz_shift(j, b_mean, s) * c[j];
            return acc;
        }
        // Both act by real multiplication, so the left factor moves across the product.
        return expectation(centered(a, a_mean, r) * centered(b, b_mean, s));
    }

private:
    Expansion e_;
    std::optional<ThetaTables> tables_;
};

inline double pendulum_mean(const ObservableKind &kind, const PendulumState &p) {
    const auto b = basis_of(p);
    switch (kind.op) {
    case Observable::Lz:
    case Observable::Phi: return 0.0; // even density, real eigenfunction
    case Observable::Chi: return two_pi * kind.N;
    case Observable::PhiSquared: return p.hbar() / (p.inertia() * p.omega()) * (p.n() + 0.5);
    default: break;
    }
    const auto ket = pendulum_ket(p);
    return inner(ket, apply_pendulum(kind, ket, b)).real();
}

inline void check_order(int r, int s) {
    if (r < 1 || r > max_correlation_order || s < 1 || s > max_correlation_order) {
        throw Error(ErrorCode::InvalidArgument, "correlation orders must lie in 1.." + std::to_string(max_correlation_order));
    }
}

} // namespace detail

/// ⟨A⟩ = (Ψ, AΨ).
inline double mean(const ObservableKind &kind, const State &state, const QuadratureSettings &quad = {}) {
    require_applicable(kind, family_of(state));
    if (kind.op == Observable::Chi) {
        return mean(ObservableKind::phi(), state, quad) + two_pi * kind.N;
    }
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        return detail::pendulum_mean(kind, *p);
    }
    return detail::ExpansionContext(state, quad).mean(kind);
}

/// ((δA)^r Ψ, (δB)^s Ψ) for 1 <= r, s <= 6.
inline complex higher_correlation(const ObservableKind &a, const ObservableKind &b, int r, int s, const State &state,
                                  const QuadratureSettings &quad = {}) {
    detail::check_order(r, s);
    require_applicable(a, family_of(state));
    require_applicable(b, family_of(state));
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        const auto basis = basis_of(state);
        const auto ket = detail::pendulum_ket(*p);
        const auto left = detail::apply_centered_power(a, detail::pendulum_mean(a, *p), r, ket, basis);
        const auto right = detail::apply_centered_power(b, detail::pendulum_mean(b, *p), s, ket, basis);
        return detail::inner(left, right);
    }
    return detail::ExpansionContext(state, quad).higher(a, b, r, s);
}

inline Correlation correlation(const ObservableKind &a, const ObservableKind &b, const State &state,
                               const QuadratureSettings &quad = {}) {
    const complex v = higher_correlation(a, b, 1, 1, state, quad);
    return {v, v.real()};
}

/// ΔA = (δAΨ, δAΨ)^{1/2}. Pendulum Lz and φ use the oscillator closed forms;
/// spherical and rotor Lz use Σ|c|²ħ²m² - (Σ|c|²ħm)².
inline double std_dev(const ObservableKind &kind, const State &state, const QuadratureSettings &quad = {}) {
    require_applicable(kind, family_of(state));
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        const double level = p->n() + 0.5;
        if (kind.op == Observable::Lz) return std::sqrt(p->hbar() * p->inertia() * p->omega() * level);
        if (kind.op == Observable::Phi || kind.op == Observable::Chi)
            return std::sqrt(p->hbar() / (p->inertia() * p->omega()) * level);
    } else if (kind.op == Observable::Lz) {
        const auto e = detail::expansion_of(state);
        double first = 0.0;
        double second = 0.0;
        for (std::size_t i = 0; i < e.ms.size(); ++i) {
            const double w = std::norm(e.c[i]);
            const double lz = e.hbar * e.ms[i];
            first += w * lz;
            second += w * lz * lz;
        }
        return std::sqrt(std::max(0.0, second - first * first));
    }
    const double variance = higher_correlation(kind, kind, 1, 1, state, quad).real();
    return std::sqrt(std::max(0.0, variance));
}

inline MomentSet moments(const ObservableKind &kind, const State &state, const QuadratureSettings &quad = {}) {
    const bool polar = family_of(state) == Family::Spherical && kind.is_multiplicative();
    return {mean(kind, state, quad), std_dev(kind, state, quad), polar ? Provenance::Quadrature : Provenance::Analytic};
}

/// ⟨[A, B]⟩ with the commutator taken as a formal operator identity:
/// [Lz, f] = -iħ ∂f/∂φ, multiplications commute.
inline complex commutator_mean(const ObservableKind &a, const ObservableKind &b, const State &state,
                               const QuadratureSettings &quad = {}) {
    require_applicable(a, family_of(state));
    require_applicable(b, family_of(state));
    const double hbar = hbar_of(state);
    if (a.is_multiplicative() == b.is_multiplicative()) {
        if (!a.is_multiplicative()) return {};
        const auto fa = multiplicative_form(a);
        const auto fb = multiplicative_form(b);
        if (const auto *p = std::get_if<PendulumState>(&state)) {
            const auto basis = basis_of(state);
            const auto ket = detail::pendulum_ket(*p);
            return detail::inner(ket, detail::apply_pendulum(fa * fb, ket, basis)) -
                   detail::inner(ket, detail::apply_pendulum(fb * fa, ket, basis));
        }
        const detail::ExpansionContext ctx(state, quad);
        return ctx.expectation(fa * fb) - ctx.expectation(fb * fa);
    }
    const auto &f_kind = a.is_multiplicative() ? a : b;
    const auto derivative = multiplicative_form(f_kind).phi_derivative();
    complex d_mean;
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        const auto ket = detail::pendulum_ket(*p);
        d_mean = detail::inner(ket, detail::apply_pendulum(derivative, ket, basis_of(state)));
    } else {
        d_mean = detail::ExpansionContext(state, quad).expectation(derivative);
    }
    const complex lz_first = complex(0.0, -hbar) * d_mean;
    return a.is_multiplicative() ? -lz_first : lz_first;
}

/// (AΨ, BΨ) - (Ψ, ABΨ). Nonzero only for A = Lz paired with a multiplication
/// on a periodic state, where it picks up the boundary term at φ = 0 ≡ 2π.
inline complex symmetry_deficit(const ObservableKind &a, const ObservableKind &b, const State &state,
                                const QuadratureSettings &quad = {}) {
    require_applicable(a, family_of(state));
    require_applicable(b, family_of(state));
    if (const auto *p = std::get_if<PendulumState>(&state)) {
        const auto basis = basis_of(state);
        const auto ket = detail::pendulum_ket(*p);
        const auto a_ket = detail::apply_pendulum(a, ket, basis);
        const auto b_ket = detail::apply_pendulum(b, ket, basis);
        const auto ab_ket = detail::apply_pendulum(a, b_ket, basis);
        return detail::inner(a_ket, b_ket) - detail::inner(ket, ab_ket);
    }
    if (a.is_multiplicative() || !b.is_multiplicative()) {
        return {};
    }
    const detail::ExpansionContext ctx(state, quad);
    const auto &e = ctx.expansion();
    const auto f = multiplicative_form(b);
    complex boundary{};
    for (std::size_t i = 0; i < e.ms.size(); ++i) {
        for (std::size_t j = 0; j < e.ms.size(); ++j) {
            if (e.ms[i] == e.ms[j]) continue;
            boundary += std::conj(e.c[i]) * e.c[j] * (e.hbar * (e.ms[i] - e.ms[j])) * ctx.element(f, e.ms[i], e.ms[j]);
        }
    }
    return boundary + complex(0.0, e.hbar) * ctx.expectation(f.phi_derivative());
}

/// Largest-magnitude deficit over the four ordered pairs drawn from {A, B}.
inline complex pair_deficit(const ObservableKind &a, const ObservableKind &b, const State &state,
                            const QuadratureSettings &quad = {}) {
    complex worst{};
    for (const auto &x : {a, b}) {
        for (const auto &y : {a, b}) {
            const complex d = symmetry_deficit(x, y, state, quad);
            if (std::abs(d) > std::abs(worst)) worst = d;
        }
    }
    return worst;
}

} // namespace lzphi
