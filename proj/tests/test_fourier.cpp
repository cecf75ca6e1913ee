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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lzphi/lzphi.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace {

using namespace lzphi;
constexpr double pi = std::numbers::pi;

// Normalized Hermite function h_n(x) = H_n(x) e^{-x²/2} / sqrt(2^n n! sqrt(π)).
double hermite_function(int n, double x) {
    const double log_norm = 0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(pi));
    return std::hermite(n, x) * std::exp(-0.5 * x * x - log_norm);
}

// Ψ̃(k) = (-i)^n h_n(k/s)/sqrt(s) for Ψ(φ) = sqrt(s) h_n(sφ).
complex transform_closed_form(const PendulumState &p, double k) {
    const double s = p.xi_scale();
    return std::pow(complex(0.0, -1.0), p.n()) * hermite_function(p.n(), k / s) / std::sqrt(s);
}

TEST(Coefficients, BasisStates) {
    const auto c = coefficients(CircularState(3));
    EXPECT_EQ(c[3], complex(1.0, 0.0));
    for (int m = -5; m <= 5; ++m) {
        if (m != 3) {
            EXPECT_EQ(c[m], complex{});
        }
    }
    EXPECT_FALSE(c.theta_dependent());
    const double h = 1.0 / std::sqrt(2.0);
    const auto r = coefficients(RotorSuperposition::make({{-1, h}, {1, h}}));
    EXPECT_EQ(r[1], complex(h, 0.0));
    EXPECT_EQ(r[-1], complex(h, 0.0));
    EXPECT_EQ(r[0], complex{});
}

TEST(Coefficients, QuadraturePathMatchesAnalytic) {
    EXPECT_NEAR(std::abs(coefficient_by_quadrature(CircularState(2), 2) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(coefficient_by_quadrature(CircularState(2), 1)), 0.0, 1e-12);
    std::mt19937 rng(41);
    for (int i = 0; i < 20; ++i) {
        const State s = fixtures::random_rotor(rng);
        const auto exact = coefficients(s);
        for (int m = -7; m <= 7; ++m) {
            EXPECT_NEAR(std::abs(coefficient_by_quadrature(s, m) - exact[m]), 0.0, 1e-12);
        }
    }
}

TEST(Coefficients, PendulumIsRejected) {
    EXPECT_LZPHI_ERROR(coefficients(PendulumState(0)), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(coefficient_by_quadrature(PendulumState(0), 0), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(line_transform(CircularState(0), 0.0), ErrorCode::FamilyMismatch);
    EXPECT_LZPHI_ERROR(coefficients(SphericalState::make(1, {0.0, 1.0, 0.0})).reconstruct(0.3), ErrorCode::DomainError);
}

TEST(Coefficients, UnitNormForNormalizedStates) {
    std::mt19937 rng(42);
    for (int i = 0; i < 50; ++i) {
        const State s = fixtures::random_rotor(rng);
        const auto coeffs = coefficients(s);
        double total = 0.0;
        for (const auto &[m, b] : coeffs.values()) total += std::norm(b);
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Coefficients, RoundTripReconstruction) {
    std::mt19937 rng(43);
    for (int i = 0; i < 20; ++i) {
        const State s = fixtures::random_rotor(rng, 6);
        const auto coeffs = coefficients(s);
        for (int j = 0; j < 64; ++j) {
            const double phi = 2.0 * pi * j / 64.0;
            EXPECT_NEAR(std::abs(coeffs.reconstruct(phi) - wavefunction(s, {phi, std::nullopt})), 0.0, 1e-9);
        }
    }
}

TEST(Coefficients, FactorizedSphericalMatchesDirectIntegration) {
    std::mt19937 rng(44);
    for (int l = 0; l <= 3; ++l) {
        const State s = fixtures::random_spherical(rng, l);
        const auto coeffs = coefficients(s);
        ASSERT_EQ(coeffs.l(), l);
        const auto f = oracle::field_of(s);
        const auto rule = gauss_legendre(128, 0.0, 2.0 * pi);
        for (int j = 0; j < 32; ++j) {
            const double theta = pi * (j + 0.5) / 32.0;
            for (int m = -l; m <= l; ++m) {
                const complex direct = rule.integrate([&](double phi) {
                    return f.psi(theta, phi) * std::polar(1.0, -m * phi);
                }) / std::sqrt(2.0 * pi);
                EXPECT_NEAR(std::abs(coeffs.at(m, theta) - direct), 0.0, 1e-9);
            }
            EXPECT_NEAR(std::abs(coeffs.reconstruct(0.7, theta) - f.psi(theta, 0.7)), 0.0, 1e-9);
        }
    }
}

TEST(Parseval, Examples) {
    EXPECT_NEAR(parseval_check(CircularState(4)), 0.0, 1e-12);
    std::mt19937 rng(45);
    EXPECT_LT(parseval_check(fixtures::random_spherical(rng, 2)), 1e-10);
    EXPECT_LT(parseval_check(PendulumState(3)), 1e-8);
}

TEST(Parseval, RandomStates) {
    std::mt19937 rng(46);
    for (int i = 0; i < 40; ++i) {
        const State s = fixtures::random_state(rng);
        EXPECT_LT(parseval_check(s), 1e-8) << "case " << i;
    }
}

TEST(LineTransform, Examples) {
    EXPECT_NEAR(std::abs(line_transform(PendulumState(0), 0.0) - std::pow(pi, -0.25)), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(line_transform(PendulumState(1), 0.0)), 0.0, 1e-10);
}

TEST(LineTransform, MatchesClosedForm) {
    for (int n = 0; n <= 8; ++n) {
        for (double inertia : {0.5, 1.0, 2.0}) {
            const PendulumState p(n, inertia, 1.5, 0.8);
            for (double k = -4.0; k <= 4.0; k += 0.5) {
                EXPECT_NEAR(std::abs(line_transform(p, k) - transform_closed_form(p, k)), 0.0, 1e-9)
                    << "n=" << n << " k=" << k;
            }
        }
    }
}

TEST(LineTransform, MatchesDirectIntegration) {
    for (int n : {0, 2, 5}) {
        const PendulumState p(n, 1.3, 0.7, 1.1);
        const auto f = oracle::field_of(p);
        for (double k : {-1.5, 0.0, 0.8, 2.5}) {
            complex direct{};
            for (const auto &x : f.grid) direct += x.weight * x.psi * std::polar(1.0, -k * x.phi);
            direct /= std::sqrt(2.0 * pi);
            EXPECT_NEAR(std::abs(line_transform(p, k) - direct), 0.0, 1e-9);
        }
    }
}

TEST(WidthProduct, QuarterBound) {
    for (int n = 0; n <= 10; ++n) {
        const PendulumState p(n, 1.7, 0.6, 0.9);
        const double w = width_product(p);
        EXPECT_NEAR(w, (n + 0.5) * (n + 0.5), 1e-9);
        if (n == 0) {
            EXPECT_NEAR(w, 0.25, 1e-9);
        } else {
            EXPECT_GT(w, 0.25 + 1e-9);
        }
    }
}

TEST(WidthProduct, AgreesWithOracleWidths) {
    for (int n : {0, 1, 4}) {
        const PendulumState p(n, 0.8, 1.6, 1.2);
        const auto f = oracle::field_of(p);
        const double phi_var = std::pow(oracle::std_dev(f, ObservableKind::phi()), 2);
        // k-space variance from the closed-form transform on the same kind of grid.
        const double w = (std::sqrt(2.0 * n + 1.0) + 12.0) * p.xi_scale();
        const auto rule = gauss_legendre(1600, -w, w);
        const double k_var = rule.integrate([&](double k) { return k * k * std::norm(transform_closed_form(p, k)); });
        EXPECT_NEAR(k_variance(p), k_var, 1e-9);
        EXPECT_NEAR(width_product(p), k_var * phi_var, 1e-8);
    }
}

TEST(WidthProduct, DiscriminantOfPositiveIntegral) {
    // ∫|λ(φ-⟨φ⟩)Ψ + ∂Ψ/∂φ|² ≥ 0 for every real λ.
    for (int n : {0, 3}) {
        const auto f = oracle::field_of(PendulumState(n, 1.0, 2.0, 1.0));
        const double mu = oracle::mean(f, ObservableKind::phi());
        for (double lambda = -4.0; lambda <= 4.0; lambda += 0.25) {
            double acc = 0.0;
            for (const auto &x : f.grid) acc += x.weight * std::norm(lambda * (x.phi - mu) * x.psi + x.dpsi);
            EXPECT_GE(acc, -1e-12);
        }
    }
}

} // namespace
