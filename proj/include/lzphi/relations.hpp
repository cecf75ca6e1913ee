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

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "lzphi/error.hpp"
#include "lzphi/fourier.hpp"
#include "lzphi/moments.hpp"
#include "lzphi/observables.hpp"
#include "lzphi/states.hpp"

namespace lzphi {

/// Closed set of Lz-φ relations. The number of an id is its eq column in the
/// catalog; R33 is R5 behind the symmetry gate and R60 is the Robertson form
/// for an arbitrary observable pair.
enum class RelationId { R5, R6, R7, R8, R10, R11, R12, R14, R15, R30, R33, R36, R52, R58, R60 };

inline constexpr std::array<RelationId, 15> all_relations{
    RelationId::R5,  RelationId::R6,  RelationId::R7,  RelationId::R8,  RelationId::R10,
    RelationId::R11, RelationId::R12, RelationId::R14, RelationId::R15, RelationId::R30,
    RelationId::R33, RelationId::R36, RelationId::R52, RelationId::R58, RelationId::R60,
};

constexpr int equation_number(RelationId id) noexcept {
    switch (id) {
    case RelationId::R5: return 5;
    case RelationId::R6: return 6;
    case RelationId::R7: return 7;
    case RelationId::R8: return 8;
    case RelationId::R10: return 10;
    case RelationId::R11: return 11;
    case RelationId::R12: return 12;
    case RelationId::R14: return 14;
    case RelationId::R15: return 15;
    case RelationId::R30: return 30;
    case RelationId::R33: return 33;
    case RelationId::R36: return 36;
    case RelationId::R52: return 52;
    case RelationId::R58: return 58;
    case RelationId::R60: return 60;
    }
    return 0;
}

inline std::string to_string(RelationId id) { return "R" + std::to_string(equation_number(id)); }

inline std::optional<RelationId> relation_from_string(std::string_view text) {
    for (auto id : all_relations) {
        if (to_string(id) == text) return id;
    }
    return std::nullopt;
}

/// Relation parameters; each is only meaningful for the relations that use it.
struct RelationParams {
    std::optional<double> alpha;                                    // R8
    std::optional<int> N;                                           // R12
    std::optional<int> N1;                                          // R12
    std::optional<std::pair<ObservableKind, ObservableKind>> pair;  // R60

    friend bool operator==(const RelationParams &, const RelationParams &) = default;
};

inline void validate_params(RelationId id, const RelationParams &params) {
    switch (id) {
    case RelationId::R8:
        if (!params.alpha || !std::isfinite(*params.alpha)) {
            throw Error(ErrorCode::InvalidParams, "R8 requires a finite alpha");
        }
        break;
    case RelationId::R12:
        if (!params.N || !params.N1) {
            throw Error(ErrorCode::InvalidParams, "R12 requires integers N and N1");
        }
        if (*params.N == *params.N1) {
            throw Error(ErrorCode::InvalidParams, "R12 requires N ≠ N1");
        }
        break;
    case RelationId::R60:
        if (!params.pair) {
            throw Error(ErrorCode::InvalidParams, "R60 requires an observable pair A, B");
        }
        break;
    default: break;
    }
}

enum class Verdict { Satisfied, SatisfiedWithEquality, Violated, Indeterminate, NotApplicable };

constexpr const char *to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Satisfied: return "Satisfied";
    case Verdict::SatisfiedWithEquality: return "SatisfiedWithEquality";
    case Verdict::Violated: return "Violated";
    case Verdict::Indeterminate: return "Indeterminate";
    case Verdict::NotApplicable: return "NotApplicable";
    }
    return "?";
}

inline constexpr double default_tolerance = 1e-9;

using Diagnostic = std::variant<double, complex>;

/// Outcome of one relation on one state.
struct RelationReport {
    std::string state_name;
    RelationId relation = RelationId::R5;
    RelationParams params;
    double lhs = 0.0;
    double rhs = 0.0;
    Verdict verdict = Verdict::Indeterminate;
    std::map<std::string, Diagnostic> diagnostics;
    bool condition31 = true;
    complex deficit;
    std::optional<std::pair<std::string, double>> sweep;
};

/// γ_mm' = ∫_0^π Θ_lm Θ_lm' sinθ dθ.
inline double gamma(int l, int m, int m1, const QuadratureSettings &quad = {}) {
    if (l < 0 || std::abs(m) > l || std::abs(m1) > l) {
        throw Error(ErrorCode::IndexRange, "gamma needs |m|, |m1| <= l");
    }
    return ThetaTables(l, quad.theta_nodes)(0, m, m1);
}

/// Δχ = [2π²(1/12 + N² - N1² + N - N1)]^{1/2}, state independent.
inline double delta_chi(int N, int N1) {
    if (N == N1) {
        throw Error(ErrorCode::InvalidParams, "delta_chi requires N ≠ N1");
    }
    const double n = N;
    const double n1 = N1;
    const double radicand = 2.0 * pi * pi * (1.0 / 12.0 + n * n - n1 * n1 + n - n1);
    if (radicand < 0.0) {
        throw Error(ErrorCode::NegativeRadicand,
                    "delta_chi radicand is negative for N=" + std::to_string(N) + ", N1=" + std::to_string(N1));
    }
    return std::sqrt(radicand);
}

/// |1 - 2π|Ψ(2π)|²| for circular and rotor states.
inline double fourier_boundary_term(const State &state) {
    const auto f = family_of(state);
    if (f != Family::Circular && f != Family::Rotor) {
        throw Error(ErrorCode::FamilyMismatch, "the boundary term is defined for circular and rotor states only");
    }
    return std::abs(1.0 - two_pi * std::norm(wavefunction(state, {two_pi, {}})));
}

/// Which families a relation can be evaluated on.
inline bool relation_applicable(RelationId id, Family family) noexcept {
    switch (id) {
    case RelationId::R10:
    case RelationId::R11: return family != Family::Pendulum;
    case RelationId::R15:
    case RelationId::R52: return family == Family::Circular || family == Family::Rotor;
    case RelationId::R36:
    case RelationId::R58: return family == Family::Spherical;
    default: return true;
    }
}

namespace detail {

inline Verdict compare(double lhs, double rhs, double tol) {
    if (std::abs(lhs - rhs) <= tol) return Verdict::SatisfiedWithEquality;
    if (lhs >= rhs - tol) return Verdict::Satisfied;
    return Verdict::Violated;
}

// Ratio relations are undefined at or beyond the pole of their denominator.
inline void ratio_relation(RelationReport &r, double numerator, double denominator, double rhs, double tol) {
    r.diagnostics["numerator"] = numerator;
    r.diagnostics["denominator"] = denominator;
    r.rhs = rhs;
    if (denominator <= 0.0 || std::abs(denominator) < tol) {
        r.lhs = std::numeric_limits<double>::quiet_NaN();
        r.verdict = Verdict::Indeterminate;
        return;
    }
    r.lhs = numerator / denominator;
    r.verdict = compare(r.lhs, r.rhs, tol);
}

} // namespace detail

/// Evaluates one relation on one state. Verdicts compare lhs and rhs with an
/// absolute tolerance; R33 and R60 are NotApplicable when the symmetry
/// conditions of their pair fail (|deficit| > tol).
inline RelationReport evaluate(RelationId id, const State &state, const RelationParams &params = {},
                               double tol = default_tolerance, const QuadratureSettings &quad = {}) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    }
    validate_params(id, params);
    const Family family = family_of(state);
    if (!relation_applicable(id, family)) {
        throw Error(ErrorCode::FamilyMismatch, to_string(id) + " is not defined for " + to_string(family) + " states");
    }
    if (id == RelationId::R60 && (!applicable(params.pair->first, family) || !applicable(params.pair->second, family))) {
        throw Error(ErrorCode::FamilyMismatch, "R60 pair is not defined for " + std::string(to_string(family)) + " states");
    }

    RelationReport r;
    r.relation = id;
    r.params = params;
    const double hbar = hbar_of(state);
    const auto lz = ObservableKind::lz();
    const auto phi = ObservableKind::phi();

    if (id == RelationId::R60) {
        r.deficit = pair_deficit(params.pair->first, params.pair->second, state, quad);
    } else if (id == RelationId::R36) {
        r.deficit = pair_deficit(ObservableKind::theta(), phi, state, quad);
    } else {
        r.deficit = apply_lz_boundary_form(state, quad);
    }
    r.condition31 = std::abs(r.deficit) <= tol;
    r.diagnostics["deficit"] = r.deficit;

    // Most relations need the (Lz, φ) widths.
    double d_lz = 0.0;
    double d_phi = 0.0;
    if (id != RelationId::R36 && id != RelationId::R60) {
        d_lz = std_dev(lz, state, quad);
        r.diagnostics["delta_lz"] = d_lz;
        if (id != RelationId::R12) {
            d_phi = std_dev(phi, state, quad);
            r.diagnostics["delta_phi"] = d_phi;
        }
    }

    switch (id) {
    case RelationId::R5:
    case RelationId::R33:
        r.lhs = d_lz * d_phi;
        r.rhs = hbar / 2.0;
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        if (id == RelationId::R33) {
            const complex formal = commutator_mean(lz, phi, state, quad);
            r.diagnostics["commutator_formal"] = formal;
            r.diagnostics["commutator_with_boundary"] = formal + r.deficit;
            if (!r.condition31) r.verdict = Verdict::NotApplicable;
        }
        break;
    case RelationId::R6:
        detail::ratio_relation(r, d_lz * d_phi, 1.0 - 3.0 * std::pow(d_phi / pi, 2), 0.16 * hbar, tol);
        break;
    case RelationId::R7:
        detail::ratio_relation(r, d_lz * d_lz * d_phi * d_phi, 1.0 - d_phi * d_phi, hbar * hbar / 4.0, tol);
        break;
    case RelationId::R8: {
        const double alpha = *params.alpha;
        r.lhs = d_lz * d_lz + std::pow(hbar * alpha / 2.0, 2) * d_phi * d_phi;
        r.rhs = hbar * hbar / 2.0 * (std::sqrt(9.0 / (pi * pi) + alpha * alpha) - 3.0 / (pi * pi));
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R10:
    case RelationId::R11: {
        const bool sine = id == RelationId::R10;
        const auto varying = sine ? ObservableKind::sin_phi() : ObservableKind::cos_phi();
        const auto other = sine ? ObservableKind::cos_phi() : ObservableKind::sin_phi();
        const double d_trig = std_dev(varying, state, quad);
        const double other_mean = mean(other, state, quad);
        const double other_sd = std_dev(other, state, quad);
        const double other_square_mean = other_sd * other_sd + other_mean * other_mean;
        r.diagnostics[sine ? "delta_sin" : "delta_cos"] = d_trig;
        r.diagnostics[sine ? "mean_cos2" : "mean_sin2"] = other_square_mean;
        r.lhs = d_lz * d_lz * d_trig * d_trig;
        r.rhs = hbar * hbar / 4.0 * other_square_mean;
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R12: {
        const double dchi = delta_chi(*params.N, *params.N1);
        r.diagnostics["delta_chi"] = dchi;
        r.lhs = d_lz * dchi;
        r.rhs = hbar / 2.0;
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R14:
        r.lhs = d_lz * d_lz + hbar * hbar * d_phi * d_phi;
        r.rhs = hbar * hbar;
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    case RelationId::R15:
    case RelationId::R52: {
        const double term = fourier_boundary_term(state);
        r.diagnostics["boundary_term"] = term;
        r.lhs = d_lz * d_phi;
        r.rhs = hbar / 2.0 * term;
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R30: {
        const auto c = correlation(lz, phi, state, quad);
        r.diagnostics["correlation"] = c.value;
        r.lhs = d_lz * d_phi;
        r.rhs = std::abs(c.value);
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R36: {
        const auto theta = ObservableKind::theta();
        const double d_theta = std_dev(theta, state, quad);
        d_phi = std_dev(phi, state, quad);
        const auto c = correlation(theta, phi, state, quad);
        r.diagnostics["delta_theta"] = d_theta;
        r.diagnostics["delta_phi"] = d_phi;
        r.diagnostics["correlation"] = c.value;
        r.diagnostics["commutator_mean"] = commutator_mean(theta, phi, state, quad);
        r.lhs = d_theta * d_phi;
        r.rhs = std::abs(c.value);
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R58: {
        const auto &s = std::get<SphericalState>(state);
        const ThetaTables tables(s.l(), quad.theta_nodes);
        complex overlap{};
        for (int m = -s.l(); m <= s.l(); ++m) {
            for (int m1 = -s.l(); m1 <= s.l(); ++m1) {
                overlap += std::conj(s.coefficient(m)) * s.coefficient(m1) * tables(0, m, m1);
            }
        }
        r.diagnostics["gamma_sum"] = overlap;
        r.lhs = d_lz * d_phi;
        r.rhs = hbar / 2.0 * std::abs(1.0 - overlap);
        r.verdict = detail::compare(r.lhs, r.rhs, tol);
        break;
    }
    case RelationId::R60: {
        const auto [a, b] = *params.pair;
        const double da = std_dev(a, state, quad);
        const double db = std_dev(b, state, quad);
        const complex comm = commutator_mean(a, b, state, quad);
        r.diagnostics["delta_a"] = da;
        r.diagnostics["delta_b"] = db;
        r.diagnostics["commutator_mean"] = comm;
        r.lhs = da * db;
        r.rhs = 0.5 * std::abs(comm);
        r.verdict = r.condition31 ? detail::compare(r.lhs, r.rhs, tol) : Verdict::NotApplicable;
        break;
    }
    }
    if (r.verdict == Verdict::SatisfiedWithEquality && std::abs(r.lhs) <= tol && std::abs(r.rhs) <= tol) {
        r.diagnostics["trivial_equality"] = 1.0;
    }
    return r;
}

/// Static description of a relation for the catalog listing.
struct CatalogEntry {
    RelationId id;
    std::string_view formula;
    std::string_view families;
    std::string_view parameters;
};

inline constexpr std::array<CatalogEntry, 15> relation_catalog{{
    {RelationId::R5, "dLz * dphi >= hbar/2", "circular, rotor, spherical, pendulum", "none"},
    {RelationId::R6, "dLz * dphi / (1 - 3 (dphi/pi)^2) >= 0.16 hbar", "circular, rotor, spherical, pendulum", "none"},
    {RelationId::R7, "dLz^2 dphi^2 / (1 - dphi^2) >= hbar^2/4", "circular, rotor, spherical, pendulum", "none"},
    {RelationId::R8, "dLz^2 + (hbar alpha/2)^2 dphi^2 >= (hbar^2/2) [sqrt(9/pi^2 + alpha^2) - 3/pi^2]",
     "circular, rotor, spherical, pendulum", "alpha (real)"},
    {RelationId::R10, "dLz^2 (d sin phi)^2 >= (hbar^2/4) <cos^2 phi>", "circular, rotor, spherical", "none"},
    {RelationId::R11, "dLz^2 (d cos phi)^2 >= (hbar^2/4) <sin^2 phi>", "circular, rotor, spherical", "none"},
    {RelationId::R12, "dLz * dchi >= hbar/2, dchi = [2 pi^2 (1/12 + N^2 - N1^2 + N - N1)]^(1/2)",
     "circular, rotor, spherical, pendulum", "N, N1 (integers, N != N1)"},
    {RelationId::R14, "dLz^2 + hbar^2 dphi^2 >= hbar^2", "circular, rotor, spherical, pendulum", "none"},
    {RelationId::R15, "dLz * dphi >= (hbar/2) |1 - 2 pi |Psi(2 pi)|^2|", "circular, rotor", "none"},
    {RelationId::R30, "dLz * dphi >= |(dLz Psi, dphi Psi)|", "circular, rotor, spherical, pendulum", "none"},
    {RelationId::R33, "dLz * dphi >= hbar/2, only where (A_j Psi, A_k Psi) = (Psi, A_j A_k Psi)",
     "circular, rotor, spherical, pendulum", "none"},
    {RelationId::R36, "dtheta * dphi >= |<theta phi> - <theta><phi>|", "spherical", "none"},
    {RelationId::R52, "dLz * dphi >= (hbar/2) |1 - 2 pi |Psi(2 pi)|^2|", "circular, rotor", "none"},
    {RelationId::R58, "dLz * dphi >= (hbar/2) |1 - sum c*_m c_m' gamma_mm'|", "spherical", "none"},
    {RelationId::R60, "dA * dB >= (1/2) |<[A, B]>|, only where the pair's symmetry conditions hold",
     "any family where A and B are defined", "A, B (observables)"},
}};

} // namespace lzphi
