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
#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lzphi/error.hpp"
#include "lzphi/numerics.hpp"
#include "lzphi/states.hpp"

namespace lzphi {

enum class Observable { Lz, Phi, PhiSquared, SinPhi, CosPhi, Theta, ThetaPhi, Chi };

/// An angular observable. Chi carries the integer shift N of χ = φ + 2πN.
struct ObservableKind {
    Observable op = Observable::Phi;
    int N = 0;

    static constexpr ObservableKind lz() { return {Observable::Lz, 0}; }
    static constexpr ObservableKind phi() { return {Observable::Phi, 0}; }
    static constexpr ObservableKind phi_squared() { return {Observable::PhiSquared, 0}; }
    static constexpr ObservableKind sin_phi() { return {Observable::SinPhi, 0}; }
    static constexpr ObservableKind cos_phi() { return {Observable::CosPhi, 0}; }
    static constexpr ObservableKind theta() { return {Observable::Theta, 0}; }
    static constexpr ObservableKind theta_phi() { return {Observable::ThetaPhi, 0}; }
    static constexpr ObservableKind chi(int n) { return {Observable::Chi, n}; }

    /// Everything except Lz acts by multiplication with a real function of (θ, φ).
    [[nodiscard]] constexpr bool is_multiplicative() const noexcept { return op != Observable::Lz; }

    friend constexpr bool operator==(const ObservableKind &a, const ObservableKind &b) noexcept {
        return a.op == b.op && (a.op != Observable::Chi || a.N == b.N);
    }
};

inline std::string to_string(const ObservableKind &kind) {
    switch (kind.op) {
    case Observable::Lz: return "Lz";
    case Observable::Phi: return "Phi";
    case Observable::PhiSquared: return "PhiSquared";
    case Observable::SinPhi: return "SinPhi";
    case Observable::CosPhi: return "CosPhi";
    case Observable::Theta: return "Theta";
    case Observable::ThetaPhi: return "ThetaPhi";
    case Observable::Chi: return "Chi(" + std::to_string(kind.N) + ")";
    }
    return "?";
}

inline std::optional<ObservableKind> observable_from_name(const std::string &name) {
    if (name == "Lz") return ObservableKind::lz();
    if (name == "Phi") return ObservableKind::phi();
    if (name == "PhiSquared") return ObservableKind::phi_squared();
    if (name == "SinPhi") return ObservableKind::sin_phi();
    if (name == "CosPhi") return ObservableKind::cos_phi();
    if (name == "Theta") return ObservableKind::theta();
    if (name == "ThetaPhi") return ObservableKind::theta_phi();
    return std::nullopt;
}

/// Whether the observable has matrix elements in the family's basis.
inline bool applicable(const ObservableKind &kind, Family family) noexcept {
    switch (kind.op) {
    case Observable::Lz:
    case Observable::Phi:
    case Observable::PhiSquared:
    case Observable::Chi: return true;
    case Observable::SinPhi:
    case Observable::CosPhi: return family != Family::Pendulum;
    case Observable::Theta:
    case Observable::ThetaPhi: return family == Family::Spherical;
    }
    return false;
}

inline void require_applicable(const ObservableKind &kind, Family family) {
    if (!applicable(kind, family)) {
        throw Error(ErrorCode::FamilyMismatch,
                    "observable " + to_string(kind) + " is not defined for " + to_string(family) + " states");
    }
}

/// Finite sum of terms θ^a φ^k e^{ijφ} with complex coefficients. Every
/// multiplicative observable, and every product of centred powers of them,
/// is of this form.
class AngularFunction {
public:
    struct Monomial {
        int theta_power = 0;
        int phi_power = 0;
        int harmonic = 0;
        friend auto operator<=>(const Monomial &, const Monomial &) = default;
    };

    AngularFunction() = default;

    static AngularFunction constant(complex value) {
        AngularFunction f;
        f.add({0, 0, 0}, value);
        return f;
    }
    static AngularFunction monomial(Monomial m, complex coefficient = 1.0) {
        AngularFunction f;
        f.add(m, coefficient);
        return f;
    }

    void add(Monomial m, complex coefficient) {
        if (coefficient == complex{}) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == complex{}) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] const std::map<Monomial, complex> &terms() const noexcept { return terms_; }
    [[nodiscard]] bool depends_on_theta() const noexcept {
        for (const auto &[m, c] : terms_) {
            if (m.theta_power != 0) return true;
        }
        return false;
    }
    [[nodiscard]] bool is_polynomial_in_phi() const noexcept {
        for (const auto &[m, c] : terms_) {
            if (m.theta_power != 0 || m.harmonic != 0) return false;
        }
        return true;
    }

    /// ∂/∂φ, term by term.
    [[nodiscard]] AngularFunction phi_derivative() const {
        AngularFunction d;
        for (const auto &[m, c] : terms_) {
            if (m.phi_power > 0) {
                d.add({m.theta_power, m.phi_power - 1, m.harmonic}, c * static_cast<double>(m.phi_power));
            }
            if (m.harmonic != 0) {
                d.add(m, c * complex(0.0, m.harmonic));
            }
        }
        return d;
    }

    [[nodiscard]] complex operator()(double theta, double phi) const {
        complex acc{};
        for (const auto &[m, c] : terms_) {
            acc += c * std::pow(theta, m.theta_power) * std::pow(phi, m.phi_power) * std::polar(1.0, m.harmonic * phi);
        }
        return acc;
    }

    friend AngularFunction operator+(AngularFunction a, const AngularFunction &b) {
        for (const auto &[m, c] : b.terms_) a.add(m, c);
        return a;
    }
    friend AngularFunction operator-(AngularFunction a, const AngularFunction &b) {
        for (const auto &[m, c] : b.terms_) a.add(m, -c);
        return a;
    }
    friend AngularFunction operator*(const AngularFunction &a, const AngularFunction &b) {
        AngularFunction out;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                out.add({ma.theta_power + mb.theta_power, ma.phi_power + mb.phi_power, ma.harmonic + mb.harmonic},
                        ca * cb);
            }
        }
        return out;
    }

    [[nodiscard]] AngularFunction pow(int r) const {
        AngularFunction out = constant(1.0);
        for (int i = 0; i < r; ++i) out = out * *this;
        return out;
    }

private:
    std::map<Monomial, complex> terms_;
};

/// The multiplication function of a non-Lz observable.
inline AngularFunction multiplicative_form(const ObservableKind &kind) {
    using M = AngularFunction::Monomial;
    AngularFunction f;
    switch (kind.op) {
    case Observable::Lz:
        throw Error(ErrorCode::InvalidArgument, "Lz is a derivative operator, not a multiplication");
    case Observable::Phi: f.add(M{0, 1, 0}, 1.0); break;
    case Observable::PhiSquared: f.add(M{0, 2, 0}, 1.0); break;
    case Observable::SinPhi:
        f.add(M{0, 0, 1}, complex(0.0, -0.5));
        f.add(M{0, 0, -1}, complex(0.0, 0.5));
        break;
    case Observable::CosPhi:
        f.add(M{0, 0, 1}, 0.5);
        f.add(M{0, 0, -1}, 0.5);
        break;
    case Observable::Theta: f.add(M{1, 0, 0}, 1.0); break;
    case Observable::ThetaPhi: f.add(M{1, 1, 0}, 1.0); break;
    case Observable::Chi:
        f.add(M{0, 1, 0}, 1.0);
        f.add(M{0, 0, 0}, two_pi * kind.N);
        break;
    }
    return f;
}

/// (1/2π) ∫_0^{2π} φ^k e^{iκφ} dφ in closed form.
inline complex phi_moment(int k, int kappa) {
    if (kappa == 0) {
        return std::pow(two_pi, k) / (k + 1.0);
    }
    // J_k = ((2π)^k - k J_{k-1}) / (iκ), J_0 = 0, using e^{2πiκ} = 1.
    const complex ik(0.0, static_cast<double>(kappa));
    complex j{};
    double power = 1.0;
    for (int p = 1; p <= k; ++p) {
        power *= two_pi;
        j = (power - static_cast<double>(p) * j) / ik;
    }
    return j / two_pi;
}

enum class Provenance { Analytic, Quadrature };

constexpr const char *to_string(Provenance p) noexcept {
    return p == Provenance::Analytic ? "analytic" : "quadrature";
}

/// Which basis a matrix element refers to, with the physical constants the
/// elements depend on. Indices are m for rotor and spherical bases, n for the
/// pendulum.
struct BasisDescriptor {
    Family family = Family::Rotor;
    int l = 0;
    double hbar = 1.0;
    double inertia = 1.0;
    double omega = 1.0;

    static BasisDescriptor rotor(double hbar = 1.0) { return {Family::Rotor, 0, hbar, 1.0, 1.0}; }
    static BasisDescriptor spherical(int l, double hbar = 1.0) { return {Family::Spherical, l, hbar, 1.0, 1.0}; }
    static BasisDescriptor pendulum(double inertia = 1.0, double omega = 1.0, double hbar = 1.0) {
        return {Family::Pendulum, 0, hbar, inertia, omega};
    }
};

inline BasisDescriptor basis_of(const State &state) {
    return std::visit(
        [](const auto &s) -> BasisDescriptor {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SphericalState>) {
                return BasisDescriptor::spherical(s.l(), s.hbar());
            } else if constexpr (std::is_same_v<T, PendulumState>) {
                return BasisDescriptor::pendulum(s.inertia(), s.omega(), s.hbar());
            } else {
                return BasisDescriptor::rotor(s.hbar());
            }
        },
        state);
}

/// Polar-angle integrals T_a(m, m') = ∫_0^π Θ_lm θ^a Θ_lm' sinθ dθ for one l,
/// computed on demand by Gauss-Legendre and memoized per power a.
class ThetaTables {
public:
    ThetaTables(int l, int nodes) : l_(l), rule_(gauss_legendre(nodes, 0.0, pi)) {
        const std::size_t dim = 2 * static_cast<std::size_t>(l) + 1;
        values_.assign(dim, std::vector<double>(rule_.size()));
        for (int m = -l; m <= l; ++m) {
            for (std::size_t i = 0; i < rule_.size(); ++i) {
                values_[static_cast<std::size_t>(m + l)][i] = theta_lm(l, m, rule_.nodes[i]);
            }
        }
    }

    [[nodiscard]] int l() const noexcept { return l_; }

    [[nodiscard]] double operator()(int power, int m, int m1) const {
        if (std::abs(m) > l_ || std::abs(m1) > l_) {
            throw Error(ErrorCode::IndexRange, "spherical basis index outside -l..l");
        }
        const auto &table = table_for(power);
        const std::size_t dim = 2 * static_cast<std::size_t>(l_) + 1;
        return table[static_cast<std::size_t>(m + l_) * dim + static_cast<std::size_t>(m1 + l_)];
    }

private:
    const std::vector<double> &table_for(int power) const {
        auto it = tables_.find(power);
        if (it != tables_.end()) {
            return it->second;
        }
        const std::size_t dim = 2 * static_cast<std::size_t>(l_) + 1;
        std::vector<double> t(dim * dim, 0.0);
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = a; b < dim; ++b) {
                double acc = 0.0;
                for (std::size_t i = 0; i < rule_.size(); ++i) {
                    const double theta = rule_.nodes[i];
                    acc += rule_.weights[i] * values_[a][i] * values_[b][i] * std::pow(theta, power) * std::sin(theta);
                }
                t[a * dim + b] = acc;
                t[b * dim + a] = acc;
            }
        }
        return tables_.emplace(power, std::move(t)).first->second;
    }

    int l_;
    QuadratureRule rule_;
    std::vector<std::vector<double>> values_;
    mutable std::map<int, std::vector<double>> tables_;
};

/// ⟨m| F |m'⟩ in the rotor basis e^{imφ}/sqrt(2π); F must not depend on θ.
inline complex rotor_element(const AngularFunction &f, int m, int m1) {
    complex acc{};
    for (const auto &[mono, c] : f.terms()) {
        if (mono.theta_power != 0) {
            throw Error(ErrorCode::FamilyMismatch, "theta-dependent function in the rotor basis");
        }
        acc += c * phi_moment(mono.phi_power, m1 - m + mono.harmonic);
    }
    return acc;
}

/// (Y_lm, F Y_lm'), factorized into polar tables times rotor moments.
inline complex spherical_element(const AngularFunction &f, const ThetaTables &tables, int m, int m1) {
    complex acc{};
    for (const auto &[mono, c] : f.terms()) {
        acc += c * tables(mono.theta_power, m, m1) * phi_moment(mono.phi_power, m1 - m + mono.harmonic);
    }
    return acc;
}

namespace detail {

// Ladder-operator elements ⟨n|φ|n'⟩, ⟨n|Lz|n'⟩, ⟨n|φ²|n'⟩ of the oscillator basis.
inline double pendulum_phi_scale(const BasisDescriptor &b) { return std::sqrt(b.hbar / (2.0 * b.inertia * b.omega)); }
inline double pendulum_lz_scale(const BasisDescriptor &b) { return std::sqrt(b.hbar * b.inertia * b.omega / 2.0); }

inline complex pendulum_element(const ObservableKind &kind, const BasisDescriptor &b, int n, int n1) {
    const double sigma = pendulum_phi_scale(b);
    auto phi_el = [&](int i, int j) -> double {
        if (i == j - 1) return sigma * std::sqrt(static_cast<double>(j));
        if (i == j + 1) return sigma * std::sqrt(j + 1.0);
        return 0.0;
    };
    switch (kind.op) {
    case Observable::Lz: {
        const double tau = pendulum_lz_scale(b);
        if (n == n1 + 1) return complex(0.0, tau * std::sqrt(n1 + 1.0));
        if (n == n1 - 1) return complex(0.0, -tau * std::sqrt(static_cast<double>(n1)));
        return {};
    }
    case Observable::Phi: return phi_el(n, n1);
    case Observable::Chi: return phi_el(n, n1) + (n == n1 ? two_pi * kind.N : 0.0);
    case Observable::PhiSquared: {
        const double s2 = sigma * sigma;
        if (n == n1) return s2 * (2.0 * n1 + 1.0);
        if (n == n1 + 2) return s2 * std::sqrt((n1 + 1.0) * (n1 + 2.0));
        if (n == n1 - 2) return s2 * std::sqrt(static_cast<double>(n1) * (n1 - 1.0));
        return {};
    }
    default: break;
    }
    throw Error(ErrorCode::FamilyMismatch, "observable " + to_string(kind) + " is not defined for pendulum states");
}

} // namespace detail

struct MatrixElement {
    complex value;
    Provenance provenance = Provenance::Analytic;
};

/// ⟨basis_i| A |basis_j⟩. Closed forms for the rotor and pendulum bases;
/// spherical elements of multiplicative observables involve a polar integral
/// and are flagged as quadrature values.
inline MatrixElement matrix_element(const ObservableKind &kind, const BasisDescriptor &basis, int i, int j,
                                    const QuadratureSettings &quad = {}) {
    require_applicable(kind, basis.family);
    switch (basis.family) {
    case Family::Circular:
    case Family::Rotor:
        if (kind.op == Observable::Lz) {
            return {i == j ? complex(basis.hbar * i) : complex{}, Provenance::Analytic};
        }
        return {rotor_element(multiplicative_form(kind), i, j), Provenance::Analytic};
    case Family::Spherical: {
        if (std::abs(i) > basis.l || std::abs(j) > basis.l) {
            throw Error(ErrorCode::IndexRange, "spherical basis index outside -l..l");
        }
        if (kind.op == Observable::Lz) {
            return {i == j ? complex(basis.hbar * i) : complex{}, Provenance::Analytic};
        }
        const ThetaTables tables(basis.l, quad.theta_nodes);
        return {spherical_element(multiplicative_form(kind), tables, i, j), Provenance::Quadrature};
    }
    case Family::Pendulum:
        if (i < 0 || j < 0) {
            throw Error(ErrorCode::IndexRange, "pendulum basis index must be non-negative");
        }
        return {detail::pendulum_element(kind, basis, i, j), Provenance::Analytic};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown family");
}

/// Dense table of ⟨i|A|j⟩ for indices first..last (inclusive).
struct MatrixElementTable {
    BasisDescriptor basis;
    int first = 0;
    int last = 0;
    std::vector<complex> values; // row-major
    Provenance provenance = Provenance::Analytic;

    [[nodiscard]] int dimension() const noexcept { return last - first + 1; }
    [[nodiscard]] complex operator()(int i, int j) const {
        return values[static_cast<std::size_t>(i - first) * static_cast<std::size_t>(dimension()) +
                      static_cast<std::size_t>(j - first)];
    }
};

inline MatrixElementTable build_table(const ObservableKind &kind, const BasisDescriptor &basis, int first, int last,
                                      const QuadratureSettings &quad = {}) {
    require_applicable(kind, basis.family);
    if (last < first) {
        throw Error(ErrorCode::IndexRange, "empty index range");
    }
    MatrixElementTable table{basis, first, last, {}, Provenance::Analytic};
    const auto dim = static_cast<std::size_t>(last - first + 1);
    table.values.resize(dim * dim);
    if (basis.family == Family::Spherical && kind.is_multiplicative()) {
        if (first < -basis.l || last > basis.l) {
            throw Error(ErrorCode::IndexRange, "spherical basis index outside -l..l");
        }
        const ThetaTables tables(basis.l, quad.theta_nodes);
        const auto f = multiplicative_form(kind);
        for (int i = first; i <= last; ++i) {
            for (int j = first; j <= last; ++j) {
                table.values[static_cast<std::size_t>(i - first) * dim + static_cast<std::size_t>(j - first)] =
                    spherical_element(f, tables, i, j);
            }
        }
        table.provenance = Provenance::Quadrature;
        return table;
    }
    for (int i = first; i <= last; ++i) {
        for (int j = first; j <= last; ++j) {
            const auto el = matrix_element(kind, basis, i, j, quad);
            table.values[static_cast<std::size_t>(i - first) * dim + static_cast<std::size_t>(j - first)] = el.value;
        }
    }
    return table;
}

namespace detail {

// Coefficient view shared by the circular, rotor and spherical families.
struct Expansion {
    std::vector<int> ms;
    std::vector<complex> c;
    double hbar = 1.0;
    int l = -1; // -1 for the rotor basis

    [[nodiscard]] bool spherical() const noexcept { return l >= 0; }
};

inline Expansion expansion_of(const State &state) {
    Expansion e;
    e.hbar = hbar_of(state);
    if (const auto *c = std::get_if<CircularState>(&state)) {
        e.ms = {c->m()};
        e.c = {complex(1.0, 0.0)};
    } else if (const auto *r = std::get_if<RotorSuperposition>(&state)) {
        for (const auto &[m, v] : r->coefficients()) {
            e.ms.push_back(m);
            e.c.push_back(v);
        }
    } else if (const auto *s = std::get_if<SphericalState>(&state)) {
        e.l = s->l();
        for (int m = -s->l(); m <= s->l(); ++m) {
            const complex v = s->coefficient(m);
            if (v != complex{}) {
                e.ms.push_back(m);
                e.c.push_back(v);
            }
        }
    } else {
        throw Error(ErrorCode::FamilyMismatch, "pendulum states have no angular-momentum expansion");
    }
    return e;
}

inline double squared_norm(const Expansion &e) {
    double acc = 0.0;
    for (const auto &v : e.c) acc += std::norm(v);
    return acc;
}

} // namespace detail

/// Symmetry deficit (LzΨ, φΨ) - (Ψ, Lz φΨ) of the (Lz, φ) pair. Evaluated as
/// iħ{(Ψ,Ψ) + 2 Im Σ c*_m c_m' m (e_m, φ e_m')} over the rotor or spherical
/// basis; identically zero for pendulum states.
inline complex apply_lz_boundary_form(const State &state, const QuadratureSettings &quad = {}) {
    if (family_of(state) == Family::Pendulum) {
        return {};
    }
    const auto e = detail::expansion_of(state);
    std::optional<ThetaTables> tables;
    if (e.spherical()) {
        tables.emplace(e.l, quad.theta_nodes);
    }
    const auto phi = multiplicative_form(ObservableKind::phi());
    complex sum{};
    for (std::size_t a = 0; a < e.ms.size(); ++a) {
        for (std::size_t b = 0; b < e.ms.size(); ++b) {
            const complex el = tables ? spherical_element(phi, *tables, e.ms[a], e.ms[b]) : rotor_element(phi, e.ms[a], e.ms[b]);
            sum += std::conj(e.c[a]) * e.c[b] * static_cast<double>(e.ms[a]) * el;
        }
    }
    return complex(0.0, e.hbar) * (detail::squared_norm(e) + 2.0 * sum.imag());
}

} // namespace lzphi
