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

#include <cstdio>

#include "lzphi/lzphi.hpp"

int main() {
    using namespace lzphi;

    const PendulumState ground(0);
    const auto r5 = evaluate(RelationId::R5, ground);
    std::printf("pendulum n=0: %s lhs=%.6f rhs=%.6f\n", to_string(r5.verdict), r5.lhs, r5.rhs);

    const CircularState eigen(2);
    const auto r33 = evaluate(RelationId::R33, eigen);
    const complex d = r33.deficit;
    std::printf("circular m=2: %s deficit=(%.3f,%.3f)\n", to_string(r33.verdict), d.real(), d.imag());

    const double h = 0.7071067811865476;
    const State mix = SphericalState::make(1, {0.0, h, complex(0.0, h)});
    const auto r36 = evaluate(RelationId::R36, mix);
    std::printf("spherical l=1: %s |C(theta,phi)|=%.6f\n", to_string(r36.verdict), r36.rhs);
    return 0;
}
