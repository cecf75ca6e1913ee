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

// Seeded random states and spec documents shared by the suites.

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lzphi/lzphi.hpp"

namespace fixtures {

using lzphi::complex;

inline std::vector<complex> random_unit_vector(std::mt19937 &rng, std::size_t size) {
    std::normal_distribution<double> g;
    std::vector<complex> c(size);
    double n2 = 0.0;
    for (auto &v : c) {
        v = {g(rng), g(rng)};
        n2 += std::norm(v);
    }
    for (auto &v : c) v /= std::sqrt(n2);
    return c;
}

inline lzphi::SphericalState random_spherical(std::mt19937 &rng, int l, double hbar = 1.0) {
    return lzphi::SphericalState::make(l, random_unit_vector(rng, static_cast<std::size_t>(2 * l + 1)), hbar, 1.0, true);
}

inline lzphi::RotorSuperposition random_rotor(std::mt19937 &rng, int max_m = 6) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<int> index(-max_m, max_m);
    std::map<int, complex> c;
    const int k = count(rng);
    const auto amps = random_unit_vector(rng, static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[index(rng)] += amps[static_cast<std::size_t>(i)];
    return lzphi::RotorSuperposition::make(c, 1.0, true);
}

inline lzphi::PendulumState random_pendulum(std::mt19937 &rng) {
    std::uniform_int_distribution<int> level(0, 10);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    return lzphi::PendulumState(level(rng), scale(rng), scale(rng), scale(rng));
}

/// Any family, drawn uniformly.
inline lzphi::State random_state(std::mt19937 &rng) {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return lzphi::CircularState(std::uniform_int_distribution<int>(-6, 6)(rng));
    case 1: return random_rotor(rng);
    case 2: return random_spherical(rng, std::uniform_int_distribution<int>(0, 4)(rng));
    default: return random_pendulum(rng);
    }
}

inline lzphi::RelationParams random_params(std::mt19937 &rng, lzphi::RelationId id) {
    using lzphi::ObservableKind;
    lzphi::RelationParams p;
    std::uniform_real_distribution<double> real(-10.0, 10.0);
    std::uniform_int_distribution<int> integer(-4, 4);
    if (id == lzphi::RelationId::R8) p.alpha = real(rng);
    if (id == lzphi::RelationId::R12) {
        p.N = integer(rng);
        do {
            p.N1 = integer(rng);
        } while (*p.N1 == *p.N);
    }
    if (id == lzphi::RelationId::R60) {
        const ObservableKind kinds[] = {ObservableKind::lz(), ObservableKind::phi(), ObservableKind::phi_squared(),
                                        ObservableKind::sin_phi(), ObservableKind::cos_phi(), ObservableKind::theta(),
                                        ObservableKind::theta_phi(), ObservableKind::chi(integer(rng))};
        std::uniform_int_distribution<int> pick(0, 7);
        p.pair = std::make_pair(kinds[pick(rng)], kinds[pick(rng)]);
    }
    return p;
}

inline lzphi::SpecDocument random_document(std::mt19937 &rng) {
    lzphi::SpecDocument doc;
    std::uniform_real_distribution<double> unit(0.1, 3.0);
    std::uniform_int_distribution<int> nodes(8, 300);
    std::bernoulli_distribution coin;
    doc.settings.hbar = unit(rng);
    doc.settings.quad.phi_nodes = nodes(rng);
    doc.settings.quad.theta_nodes = nodes(rng);
    doc.settings.quad.hermite_nodes = nodes(rng);
    doc.settings.tolerance = std::pow(10.0, -std::uniform_int_distribution<int>(3, 12)(rng)) * unit(rng);
    doc.settings.normalize = coin(rng);

    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < count; ++i) {
        lzphi::StateEntry e;
        e.name = "s" + std::to_string(i) + (coin(rng) ? "_x" : "");
        if (coin(rng)) e.hbar = unit(rng);
        switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: e.spec = lzphi::CircularSpec{std::uniform_int_distribution<int>(-9, 9)(rng)}; break;
        case 1: {
            lzphi::RotorSpec r;
            const auto v = random_unit_vector(rng, 3);
            for (int k = 0; k < 3; ++k) r.c[k * 2 - 2 + std::uniform_int_distribution<int>(0, 1)(rng)] = v[static_cast<std::size_t>(k)];
            e.spec = r;
            break;
        }
        case 2: {
            const int l = std::uniform_int_distribution<int>(0, 3)(rng);
            e.spec = lzphi::SphericalSpec{l, random_unit_vector(rng, static_cast<std::size_t>(2 * l + 1)), unit(rng)};
            break;
        }
        default:
            e.spec = lzphi::PendulumSpec{std::uniform_int_distribution<int>(0, 10)(rng), unit(rng), unit(rng)};
            break;
        }
        doc.states.push_back(std::move(e));
    }
    const int picks = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < picks; ++i) {
        const auto id = lzphi::all_relations[std::uniform_int_distribution<std::size_t>(0, lzphi::all_relations.size() - 1)(rng)];
        doc.selections.push_back({id, random_params(rng, id)});
    }
    return doc;
}

} // namespace fixtures
