/*
 * Copyright 2026 The qfs authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "qfs/serialize.hpp"

using namespace qfs;

TEST_CASE("subspace text round trip") {
    std::mt19937_64 rng(31);
    for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        auto f = Field::make(p, e);
        for (int trial = 0; trial < 20; ++trial) {
            Mat m = zeros(*f, 2, 4);
            for (Eigen::Index i = 0; i < 2; ++i)
                for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = f->elem(static_cast<uint32_t>(rng() % f->q()));
            Subspace s = span(4, m);
            CHECK(subspace_from_text(*f, 4, to_text(s)) == s);
        }
        CHECK(subspace_from_text(*f, 3, "-") == zero_subspace(*f, 3));
    }
}

TEST_CASE("quadratic space text round trip") {
    for (auto t : {SpaceType::Orthogonal, SpaceType::Symplectic}) {
        auto v = standard_space(3, 2, t);
        QuadraticSpace back = space_from_text(to_text(v));
        CHECK(back.dim() == v.dim());
        CHECK(back.type() == v.type());
        CHECK(to_text(back) == to_text(v));
    }
    auto u = standard_space(9, 1, SpaceType::Unitary);
    CHECK(to_text(space_from_text(to_text(u))) == to_text(u));
}
