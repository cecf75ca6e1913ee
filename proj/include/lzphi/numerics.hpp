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
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "lzphi/error.hpp"

namespace lzphi {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Largest Hermite order handled by hermite_poly and the pendulum family.
inline constexpr int max_hermite_order = 64;

enum class QuadratureDomain {
    Interval,       // plain Gauss-Legendre on [a, b]
    GaussianLine,   // real line with weight exp(-x^2)
};

/// Nodes and positive weights of a Gaussian quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadratureDomain domain = QuadratureDomain::Interval;
    double lower = 0.0;
    double upper = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

    template <class F> [[nodiscard]] auto integrate(F &&f) const {
        using R = decltype(f(0.0));
        R acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            acc += weights[i] * f(nodes[i]);
        }
        return acc;
    }
};

/// Engine node counts. The sinθ factor is never folded into the θ rule.
struct QuadratureSettings {
    int phi_nodes = 256;
    int theta_nodes = 128;
    int hermite_nodes = 128;

    friend bool operator==(const QuadratureSettings &, const QuadratureSettings &) = default;
};

namespace detail {

// Legendre P_n and its derivative at x, by the three-term recurrence.
inline void legendre_with_derivative(int n, double x, double &p, double &dp) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = (n == 0) ? 1.0 : p1;
    dp = n * (x * p - p0) / (x * x - 1.0);
}

struct CanonicalRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline CanonicalRule compute_legendre(int n) {
    CanonicalRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p = 0.0;
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre_with_derivative(n, z, p, dp);
            const double dz = p / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        legendre_with_derivative(n, z, p, dp);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        r.x[n / 2] = 0.0;
    }
    return r;
}

inline CanonicalRule compute_hermite(int n) {
    // Newton iteration on the orthonormal Hermite recurrence with the usual
    // asymptotic starting guesses, largest root first.
    CanonicalRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pim4 = std::pow(pi, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * r.x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * r.x[1];
        } else {
            z = 2.0 * z - r.x[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) {
                break;
            }
        }
        r.x[i] = z;
        r.w[i] = 2.0 / (pp * pp);
    }
    // r.x currently holds the positive half in descending order; mirror it.
    std::vector<double> xs(n);
    std::vector<double> ws(n);
    for (int i = 0; i < half; ++i) {
        xs[n - 1 - i] = r.x[i];
        ws[n - 1 - i] = r.w[i];
        xs[i] = -r.x[i];
        ws[i] = r.w[i];
    }
    if (n % 2 == 1) {
        xs[n / 2] = 0.0;
    }
    r.x = std::move(xs);
    r.w = std::move(ws);
    return r;
}

// Rules are immutable once computed; the cache only avoids recomputation.
template <CanonicalRule (*Compute)(int)> const CanonicalRule &cached_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const CanonicalRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[n];
    if (!slot) {
        slot = std::make_shared<const CanonicalRule>(Compute(n));
    }
    return *slot;
}

} // namespace detail

/// Gauss-Legendre rule on [a, b], exact for polynomials of degree <= 2n-1.
inline QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "gauss_legendre needs n >= 2, got " + std::to_string(n));
    }
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::InvalidArgument, "gauss_legendre needs a finite interval with a < b");
    }
    const auto &canon = detail::cached_rule<detail::compute_legendre>(n);
    QuadratureRule rule;
    rule.domain = QuadratureDomain::Interval;
    rule.lower = a;
    rule.upper = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * canon.x[i];
        rule.weights[i] = half * canon.w[i];
    }
    return rule;
}

/// Gauss-Hermite rule: sum w_i f(x_i) approximates the integral of f(x) exp(-x^2).
inline QuadratureRule gauss_hermite(int n) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "gauss_hermite needs n >= 2, got " + std::to_string(n));
    }
    const auto &canon = detail::cached_rule<detail::compute_hermite>(n);
    QuadratureRule rule;
    rule.domain = QuadratureDomain::GaussianLine;
    rule.lower = -INFINITY;
    rule.upper = INFINITY;
    rule.nodes = canon.x;
    rule.weights = canon.w;
    return rule;
}

/// Physicists' Hermite polynomial H_n(x), n <= max_hermite_order.
inline double hermite_poly(int n, double x) {
    if (n < 0 || n > max_hermite_order) {
        throw Error(ErrorCode::IndexRange,
                    "hermite_poly supports 0 <= n <= " + std::to_string(max_hermite_order));
    }
    if (n == 0) {
        return 1.0;
    }
    double h0 = 1.0;
    double h1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

/// Orthonormal Hermite polynomial H_n(x) / sqrt(2^n n! sqrt(pi)).
/// Multiplying by exp(-x^2/2) gives the unit-norm Hermite function.
inline double normalized_hermite(int n, double x) {
    double p0 = std::pow(pi, -0.25);
    if (n == 0) {
        return p0;
    }
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
        const double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Polar factor of Y_lm: Y_lm(θ, φ) = theta_lm(l, m, θ) e^{imφ} / sqrt(2π),
/// normalized so that the integral of theta_lm^2 sinθ over [0, π] is 1.
/// Carries the Condon-Shortley phase, hence theta_lm(l, -m) = (-1)^m theta_lm(l, m).
inline double theta_lm(int l, int m, double theta) {
    if (l < 0 || std::abs(m) > l) {
        throw Error(ErrorCode::IndexRange,
                    "theta_lm needs 0 <= |m| <= l, got l=" + std::to_string(l) + " m=" + std::to_string(m));
    }
    if (!(theta >= 0.0 && theta <= pi)) {
        throw Error(ErrorCode::DomainError, "theta_lm needs theta in [0, pi]");
    }
    const int am = std::abs(m);
    const double x = std::cos(theta);
    const double s = std::sin(theta);

    double pmm = std::sqrt(0.5);
    for (int k = 1; k <= am; ++k) {
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    }
    double value = pmm;
    if (l > am) {
        double p_prev = pmm;
        double p_curr = x * std::sqrt(2.0 * am + 3.0) * pmm;
        for (int ll = am + 2; ll <= l; ++ll) {
            const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - am * am));
            const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - am * am) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
            const double next = a * (x * p_curr - b * p_prev);
            p_prev = p_curr;
            p_curr = next;
        }
        value = p_curr;
    }
    if (m < 0 && (am % 2 == 1)) {
        value = -value;
    }
    return value;
}

} // namespace lzphi
