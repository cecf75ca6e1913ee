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

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lzphi/lzphi.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace {

using namespace lzphi;
constexpr double pi = std::numbers::pi;

double diag(const RelationReport &r, const std::string &key) { return std::get<double>(r.diagnostics.at(key)); }
complex cdiag(const RelationReport &r, const std::string &key) { return std::get<complex>(r.diagnostics.at(key)); }

TEST(Evaluate, PendulumGroundStateIsTight) {
    const auto r = evaluate(RelationId::R5, PendulumState(0, 1.0, 1.0, 1.0));
    EXPECT_NEAR(r.lhs, 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(r.rhs, 0.5);
    EXPECT_EQ(r.verdict, Verdict::SatisfiedWithEquality);
    EXPECT_FALSE(r.diagnostics.contains("trivial_equality"));
}

TEST(Evaluate, CircularR30DegeneratesToZeroEqualsZero) {
    const auto r = evaluate(RelationId::R30, CircularState(4));
    EXPECT_NEAR(r.lhs, 0.0, 1e-12);
    EXPECT_NEAR(r.rhs, 0.0, 1e-12);
    EXPECT_EQ(r.verdict, Verdict::SatisfiedWithEquality);
    EXPECT_EQ(diag(r, "trivial_equality"), 1.0);
}

TEST(Evaluate, CircularR33IsNotApplicable) {
    const auto r = evaluate(RelationId::R33, CircularState(4));
    EXPECT_EQ(r.verdict, Verdict::NotApplicable);
    EXPECT_FALSE(r.condition31);
    EXPECT_NEAR(std::abs(r.deficit - complex(0.0, 1.0)), 0.0, 1e-12);
    // Formal commutator -iħ plus the deficit iħ gives the boundary-corrected value 0.
    EXPECT_NEAR(std::abs(cdiag(r, "commutator_formal") - complex(0.0, -1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(cdiag(r, "commutator_with_boundary")), 0.0, 1e-12);
}

TEST(Evaluate, CircularR14) {
    for (int m : {-3, 0, 5}) {
        const auto r = evaluate(RelationId::R14, CircularState(m));
        EXPECT_NEAR(r.lhs, pi * pi / 3.0, 1e-12);
        EXPECT_NEAR(r.lhs, 3.2899, 1e-4);
        EXPECT_DOUBLE_EQ(r.rhs, 1.0);
        EXPECT_EQ(r.verdict, Verdict::Satisfied);
    }
}

TEST(Evaluate, CircularR52IsTrivialEquality) {
    const auto r = evaluate(RelationId::R52, CircularState(2));
    EXPECT_NEAR(r.lhs, 0.0, 1e-10);
    EXPECT_NEAR(r.rhs, 0.0, 1e-10);
    EXPECT_EQ(r.verdict, Verdict::SatisfiedWithEquality);
    EXPECT_EQ(diag(r, "trivial_equality"), 1.0);
}

TEST(Evaluate, CircularR6DenominatorVanishes) {
    const auto r = evaluate(RelationId::R6, CircularState(1));
    EXPECT_EQ(r.verdict, Verdict::Indeterminate);
    EXPECT_NEAR(diag(r, "denominator"), 0.0, 1e-12);
    EXPECT_TRUE(std::isnan(r.lhs));
}

TEST(Evaluate, R7BeyondPoleIsIndeterminate) {
    // Δφ = π/√3 > 1 puts 1 - Δφ² below zero.
    const auto r = evaluate(RelationId::R7, CircularState(0));
    EXPECT_EQ(r.verdict, Verdict::Indeterminate);
    EXPECT_LT(diag(r, "denominator"), 0.0);
    // n = 0 pendulum with Δφ² = 1/2 is inside the pole: lhs = (1/4)/(1/2).
    const auto p = evaluate(RelationId::R7, PendulumState(0));
    EXPECT_NEAR(p.lhs, 0.5, 1e-12);
    EXPECT_EQ(p.verdict, Verdict::Satisfied);
}

TEST(Evaluate, R8RightHandSideDependsOnAlpha) {
    for (double alpha : {0.0, 1.0, 10.0}) {
        RelationParams params;
        params.alpha = alpha;
        const auto r = evaluate(RelationId::R8, CircularState(1, 2.0), params);
        const double expected_rhs = 4.0 / 2.0 * (std::sqrt(9.0 / (pi * pi) + alpha * alpha) - 3.0 / (pi * pi));
        EXPECT_NEAR(r.rhs, expected_rhs, 1e-12);
        EXPECT_NEAR(r.lhs, std::pow(2.0 * alpha / 2.0, 2) * pi * pi / 3.0, 1e-10);
    }
}

TEST(Evaluate, R10R11OnCircularState) {
    // Δsinφ² = Δcosφ² = 1/2 and ⟨cos²⟩ = ⟨sin²⟩ = 1/2, while ΔLz = 0.
    for (auto id : {RelationId::R10, RelationId::R11}) {
        const auto r = evaluate(id, CircularState(3));
        EXPECT_NEAR(r.lhs, 0.0, 1e-14);
        EXPECT_NEAR(r.rhs, 0.125, 1e-12);
        EXPECT_EQ(r.verdict, Verdict::Violated);
    }
}

TEST(Evaluate, R12UsesStateIndependentDeltaChi) {
    RelationParams params;
    params.N = 1;
    params.N1 = 0;
    const auto r = evaluate(RelationId::R12, PendulumState(1), params);
    EXPECT_NEAR(diag(r, "delta_chi"), pi * std::sqrt(25.0 / 6.0), 1e-12);
    EXPECT_NEAR(r.lhs, std::sqrt(1.5) * pi * std::sqrt(25.0 / 6.0), 1e-10);
}

TEST(Evaluate, R15MatchesR52OnRotors) {
    std::mt19937 rng(21);
    for (int i = 0; i < 10; ++i) {
        const State s = fixtures::random_rotor(rng);
        const auto a = evaluate(RelationId::R15, s);
        const auto b = evaluate(RelationId::R52, s);
        EXPECT_EQ(a.lhs, b.lhs);
        EXPECT_EQ(a.rhs, b.rhs);
    }
}

TEST(Evaluate, R52RightHandSideEqualsImaginaryCorrelationOnRotors) {
    std::mt19937 rng(22);
    for (int i = 0; i < 20; ++i) {
        const State s = fixtures::random_rotor(rng);
        const auto r = evaluate(RelationId::R52, s);
        const auto c = oracle::correlation(oracle::field_of(s), ObservableKind::lz(), ObservableKind::phi());
        EXPECT_NEAR(r.rhs, std::abs(c.imag()), 1e-9);
        EXPECT_NE(r.verdict, Verdict::Violated);
    }
}

TEST(Evaluate, R36CommutingPairWithNonzeroCorrelation) {
    const double h = 1.0 / std::sqrt(2.0);
    const State s = SphericalState::make(1, {0.0, h, complex(0.0, h)});
    const auto r = evaluate(RelationId::R36, s);
    EXPECT_GT(r.rhs, 0.01);
    EXPECT_NEAR(std::abs(cdiag(r, "commutator_mean")), 0.0, 1e-10);
    const auto expected = oracle::correlation(oracle::field_of(s), ObservableKind::theta(), ObservableKind::phi());
    EXPECT_NEAR(r.rhs, std::abs(expected), 1e-9);
    EXPECT_EQ(r.verdict, Verdict::Satisfied);
    EXPECT_TRUE(r.condition31);
}

TEST(Evaluate, R36VanishesForSeparableMixing) {
    // Θ_{1,±1} share one polar profile, so mixing only m = ±1 leaves θ and φ
    // independent and the correlation vanishes for every angle.
    for (double t = 0.0; t < pi; t += pi / 16.0) {
        const State s = SphericalState::make(1, {std::cos(t), 0.0, std::sin(t)});
        EXPECT_NEAR(evaluate(RelationId::R36, s).rhs, 0.0, 1e-12);
    }
}

TEST(Evaluate, R58OnSphericalStates) {
    const State single = SphericalState::make(1, {0.0, 1.0, 0.0});
    const auto r = evaluate(RelationId::R58, single);
    // Σ c* c γ = 1, so the right-hand side vanishes; deficit is iħ.
    EXPECT_NEAR(r.rhs, 0.0, 1e-12);
    EXPECT_FALSE(r.condition31);
    std::mt19937 rng(23);
    for (int i = 0; i < 100; ++i) {
        const State s = fixtures::random_spherical(rng, 1 + i % 3);
        const auto q = evaluate(RelationId::R58, s);
        EXPECT_GE(q.lhs, q.rhs - 1e-9) << "case " << i;
        // (ħ/2)|1 - Σ c* c γ| equals |Im C(Lz, φ)|.
        const auto c = oracle::correlation(oracle::field_of(s), ObservableKind::lz(), ObservableKind::phi());
        EXPECT_NEAR(q.rhs, std::abs(c.imag()), 1e-9);
    }
}

TEST(Evaluate, R60GenericPairs) {
    RelationParams params;
    params.pair = std::make_pair(ObservableKind::lz(), ObservableKind::phi());
    const auto p = evaluate(RelationId::R60, PendulumState(2), params);
    EXPECT_NEAR(p.lhs, 2.5, 1e-12);
    EXPECT_NEAR(p.rhs, 0.5, 1e-12);
    EXPECT_EQ(p.verdict, Verdict::Satisfied);
    const auto c = evaluate(RelationId::R60, CircularState(1), params);
    EXPECT_EQ(c.verdict, Verdict::NotApplicable);
    params.pair = std::make_pair(ObservableKind::phi(), ObservableKind::phi_squared());
    const auto m = evaluate(RelationId::R60, CircularState(1), params);
    EXPECT_TRUE(m.condition31);
    EXPECT_NEAR(m.rhs, 0.0, 1e-14);
    EXPECT_EQ(m.verdict, Verdict::Satisfied);
    params.pair = std::make_pair(ObservableKind::theta(), ObservableKind::lz());
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R60, CircularState(1), params), ErrorCode::FamilyMismatch);
}

TEST(Evaluate, ApplicabilityAndParameterErrors) {
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R58, CircularState(1)), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R36, RotorSuperposition::make({{1, 1.0}})), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R52, PendulumState(0)), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R52, SphericalState::make(0, {1.0})), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R10, PendulumState(0)), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R8, CircularState(1)), ErrorCode::InvalidParams);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R12, CircularState(1)), ErrorCode::InvalidParams);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R60, CircularState(1)), ErrorCode::InvalidParams);
    RelationParams same;
    same.N = 2;
    same.N1 = 2;
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R12, CircularState(1), same), ErrorCode::InvalidParams);
    RelationParams bad_alpha;
    bad_alpha.alpha = std::numeric_limits<double>::infinity();
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R8, CircularState(1), bad_alpha), ErrorCode::InvalidParams);
    EXPECT_LZPHI_ERROR(evaluate(RelationId::R5, CircularState(1), {}, 0.0), ErrorCode::InvalidArgument);
}

TEST(Gamma, Values) {
    EXPECT_NEAR(gamma(2, 1, 1), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(gamma(2, 1, -1)), 1.0, 1e-10);
    EXPECT_NEAR(gamma(2, 1, -1), -1.0, 1e-10);
    EXPECT_NEAR(gamma(2, 2, -2), 1.0, 1e-10);
    EXPECT_NEAR(gamma(2, 2, 1), 0.0, 1e-10);
    const auto rule = gauss_legendre(200, 0.0, pi);
    for (int l = 0; l <= 4; ++l) {
        for (int m = -l; m <= l; ++m) {
            for (int m1 = -l; m1 <= l; ++m1) {
                const double ref = rule.integrate([&](double t) {
                    return oracle::theta_factor(l, m, t) * oracle::theta_factor(l, m1, t) * std::sin(t);
                });
                EXPECT_NEAR(gamma(l, m, m1), ref, 1e-10);
            }
        }
    }
    EXPECT_LZPHI_ERROR(gamma(1, 2, 0), ErrorCode::IndexRange);
}

TEST(DeltaChi, ClosedForm) {
    EXPECT_NEAR(delta_chi(1, 0), pi * std::sqrt(25.0 / 6.0), 1e-12);
    EXPECT_NEAR(delta_chi(1, 0), 6.4127, 1e-4);
    EXPECT_LZPHI_ERROR(delta_chi(0, 0), ErrorCode::InvalidParams);
    EXPECT_LZPHI_ERROR(delta_chi(0, 1), ErrorCode::NegativeRadicand);
}

TEST(BoundaryTerm, Examples) {
    for (int m : {-2, 0, 3}) EXPECT_NEAR(fourier_boundary_term(CircularState(m)), 0.0, 1e-12);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(fourier_boundary_term(RotorSuperposition::make({{0, h}, {1, h}})), 1.0, 1e-12);
    EXPECT_NEAR(fourier_boundary_term(RotorSuperposition::make({{0, 1.0}})), 0.0, 1e-12);
    EXPECT_LZPHI_ERROR(fourier_boundary_term(PendulumState(0)), ErrorCode::FamilyMismatch);
}

TEST(Invariants, SchwarzNeverViolated) {
    std::mt19937 rng(31);
    for (int i = 0; i < 300; ++i) {
        const State s = fixtures::random_state(rng);
        EXPECT_NE(evaluate(RelationId::R30, s).verdict, Verdict::Violated) << "case " << i;
    }
}

TEST(Invariants, PendulumExactness) {
    for (int n = 0; n <= 10; ++n) {
        const auto r = evaluate(RelationId::R5, PendulumState(n, 1.0, 1.0, 1.0));
        EXPECT_NEAR(r.lhs, n + 0.5, 1e-10);
        EXPECT_EQ(r.verdict, n == 0 ? Verdict::SatisfiedWithEquality : Verdict::Satisfied);
        const auto g = evaluate(RelationId::R33, PendulumState(n));
        EXPECT_TRUE(g.condition31);
        EXPECT_EQ(std::abs(g.deficit), 0.0);
        EXPECT_NE(g.verdict, Verdict::NotApplicable);
    }
}

TEST(Invariants, GateSoundness) {
    std::mt19937 rng(32);
    for (int i = 0; i < 100; ++i) {
        const State s = fixtures::random_state(rng);
        const auto r = evaluate(RelationId::R33, s);
        EXPECT_EQ(r.verdict == Verdict::NotApplicable, std::abs(r.deficit) > default_tolerance);
        EXPECT_EQ(r.condition31, std::abs(r.deficit) <= default_tolerance);
    }
}

TEST(Invariants, HbarScaleCovariance) {
    std::mt19937 rng(33);
    for (int i = 0; i < 40; ++i) {
        const State s = fixtures::random_state(rng);
        for (double k : {0.25, 3.0}) {
            const State t = with_hbar(s, hbar_of(s) * k);
            for (auto id : {RelationId::R5, RelationId::R33}) {
                const auto a = evaluate(id, s);
                const auto b = evaluate(id, t, {}, default_tolerance * k);
                if (family_of(s) == Family::Pendulum) {
                    // ΔLzΔφ = ħ(n + 1/2) regardless of I and ω.
                    EXPECT_NEAR(b.lhs, k * a.lhs, 1e-9 * k * a.lhs);
                } else {
                    EXPECT_NEAR(b.lhs, k * a.lhs, 1e-10 * std::max(1.0, k * a.lhs));
                }
                EXPECT_NEAR(b.rhs, k * a.rhs, 1e-12);
                EXPECT_EQ(a.verdict, b.verdict);
            }
        }
    }
}

TEST(Invariants, VerdictRules) {
    std::mt19937 rng(34);
    for (int i = 0; i < 200; ++i) {
        const State s = fixtures::random_state(rng);
        const auto id = all_relations[std::uniform_int_distribution<std::size_t>(0, all_relations.size() - 1)(rng)];
        if (!relation_applicable(id, family_of(s))) continue;
        const auto params = fixtures::random_params(rng, id);
        RelationReport r;
        try {
            r = evaluate(id, s, params);
        } catch (const Error &e) {
            EXPECT_TRUE(e.code() == ErrorCode::NegativeRadicand || e.code() == ErrorCode::FamilyMismatch) << e.what();
            continue;
        }
        const double tol = default_tolerance;
        switch (r.verdict) {
        case Verdict::SatisfiedWithEquality: EXPECT_LE(std::abs(r.lhs - r.rhs), tol); break;
        case Verdict::Satisfied:
            EXPECT_GE(r.lhs, r.rhs - tol);
            EXPECT_GT(std::abs(r.lhs - r.rhs), tol);
            break;
        case Verdict::Violated: EXPECT_LT(r.lhs, r.rhs - tol); break;
        case Verdict::Indeterminate: EXPECT_TRUE(id == RelationId::R6 || id == RelationId::R7); break;
        case Verdict::NotApplicable:
            EXPECT_TRUE(id == RelationId::R33 || id == RelationId::R60);
            EXPECT_FALSE(r.condition31);
            break;
        }
    }
}

TEST(RelationId, NamesAndCatalog) {
    for (auto id : all_relations) {
        EXPECT_EQ(relation_from_string(to_string(id)), id);
        EXPECT_EQ("R" + std::to_string(equation_number(id)), to_string(id));
    }
    EXPECT_FALSE(relation_from_string("R9").has_value());
    EXPECT_FALSE(relation_from_string("R13").has_value());
    EXPECT_FALSE(relation_from_string("r5").has_value());
    ASSERT_EQ(relation_catalog.size(), all_relations.size());
    for (std::size_t i = 0; i < all_relations.size(); ++i) EXPECT_EQ(relation_catalog[i].id, all_relations[i]);
}

} // namespace
