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

#include "qfs/lift.hpp"
#include "qfs/maxiso.hpp"

using namespace qfs;

namespace {

QuadraticSpace random_space(FieldPtr k, Involution sigma, FormParameter param, Eigen::Index d, Rng& rng) {
    for (;;) {
        Mat s = zeros(*k, d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) s(i, j) = k->elem(static_cast<uint32_t>(rng.below(k->q())));
        try {
            return QuadraticSpace(k, sigma, param, s);
        } catch (const Error&) {
            continue;  // singular hermitian Gram, draw again
        }
    }
}

// Entrywise trace compatibility of the k-Gram against the flat GF(p)-Gram.
bool trace_matches(const KStructure& ks, const Mat& k_gram, const Mat& hp) {
    const Field& k = *ks.k;
    const Eigen::Index e = k.e();
    for (Eigen::Index i = 0; i < ks.d; ++i)
        for (Eigen::Index j = 0; j < ks.d; ++j)
            for (Eigen::Index s = 0; s < e; ++s)
                for (Eigen::Index t = 0; t < e; ++t) {
                    Fq val = Fq(&k, k.pow(k.p(), s)) * k_gram(i, j) * ks.sigma(Fq(&k, k.pow(k.p(), t)));
                    if (k.trace_to_prime(val.v) != hp(i * e + s, j * e + t).v) return false;
                }
    return true;
}

}  // namespace

TEST_CASE("prime-field lift is the identity") {
    auto f3 = Field::make(3, 1);
    auto ks = make_kstructure(f3, Involution{}, 2);
    Mat hp = zeros(*f3, 2, 2);
    hp(0, 1) = f3->one();
    hp(1, 0) = f3->one();
    hp(0, 0) = f3->from_int(2);
    Mat lifted = lift_bilinear(AdjointForm{ks, hp});
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) CHECK(lifted(i, j) == hp(i, j));
}

TEST_CASE("trace pairing lifts to the multiplication pairing") {
    auto f4 = Field::make(2, 2);
    auto ks = make_kstructure(f4, Involution{}, 1);
    Mat hp = zeros(*ks.fp, 2, 2);
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            hp(s, t) = ks.fp->from_int(f4->trace_to_prime(f4->mul(f4->pow(2, s), f4->pow(2, t))));
    Mat lifted = lift_bilinear(AdjointForm{ks, hp});
    CHECK(lifted(0, 0) == f4->one());
}

TEST_CASE("random hermitian lifts round-trip") {
    Rng rng(77);
    struct Case { uint32_t p, e; Eigen::Index d; InvolutionKind inv; };
    for (auto c : {Case{3, 2, 2, InvolutionKind::FrobeniusHalf}, Case{3, 2, 1, InvolutionKind::FrobeniusHalf},
                   Case{2, 2, 2, InvolutionKind::FrobeniusHalf}, Case{2, 2, 2, InvolutionKind::Identity},
                   Case{5, 2, 1, InvolutionKind::FrobeniusHalf}, Case{3, 2, 2, InvolutionKind::Identity}}) {
        auto k = Field::make(c.p, c.e);
        Involution sigma{c.inv};
        auto ks = make_kstructure(k, sigma, c.d);
        FormParameter param =
            c.inv == InvolutionKind::FrobeniusHalf ? FormParameter::unitary() : FormParameter::orthogonal();
        for (int inst = 0; inst < 4; ++inst) {
            auto vk = random_space(k, sigma, param, c.d, rng);
            auto vp = trace_down(vk, ks);
            // The composed trace of the lifted hermitian Gram reproduces the
            // flat Gram on the whole basis grid, and the lift is unique.
            Mat lifted = lift_bilinear(AdjointForm{ks, vp.gram_h()});
            CHECK(trace_matches(ks, lifted, vp.gram_h()));
            for (Eigen::Index i = 0; i < c.d; ++i)
                for (Eigen::Index j = 0; j < c.d; ++j) CHECK(lifted(i, j) == vk.gram_h()(i, j));
            CHECK(lift_uniqueness_kernel_dim(ks) == 0);
        }
    }
}

TEST_CASE("non-adjoint Grams are rejected") {
    auto f4 = Field::make(2, 2);
    auto ks = make_kstructure(f4, Involution{}, 1);
    Mat hp = zeros(*ks.fp, 2, 2);
    hp(0, 1) = ks.fp->one();  // not balanced against the k-action
    CHECK_THROWS_AS(lift_bilinear(AdjointForm{ks, hp}), Error);
}

TEST_CASE("characteristic-2 quadratic lifting") {
    Rng rng(13);
    for (uint32_t e : {1u, 2u}) {
        auto k = Field::make(2, e);
        const Eigen::Index d = 2;
        auto ks = make_kstructure(k, Involution{}, d);
        for (int inst = 0; inst < 4; ++inst) {
            auto vk = random_space(k, Involution{}, FormParameter::orthogonal(), d, rng);
            auto vp = trace_down(vk, ks);
            auto lifted = lift_quadratic_char2(AdjointQuadraticForm{ks, vp.gram_s()});
            // Ambiguity of the solve matches |Lambda(V)| = q^{d(d-1)/2}.
            CHECK(lifted.ambiguity_dim == static_cast<int>(e * d * (d - 1) / 2));
            QuadraticSpace relift(k, Involution{}, FormParameter::orthogonal(), lifted.s_k);
            // Uniqueness: the relifted space has the very same quadratic map,
            // checked as Tr q' = q on every vector.
            SpanWalker walk(*ks.fp, identity(*ks.fp, ks.flat_dim()), ks.flat_dim());
            do {
                RowVec v_k = contract_vector(ks, walk.current());
                uint32_t traced = k->trace_to_prime(relift.s_form(v_k, v_k).v);
                CHECK(traced == vp.eval_q(walk.current()).v);
                CHECK(relift.eval_q(v_k) == vk.eval_q(v_k));
            } while (walk.advance());
        }
    }
    // GF(2): the lift is the identity on Gram classes.
    auto f2 = Field::make(2, 1);
    auto ks2 = make_kstructure(f2, Involution{}, 2);
    auto v2 = QuadraticSpace::hyperbolic(f2, Involution{}, 1, FormParameter::orthogonal());
    auto lifted2 = lift_quadratic_char2(AdjointQuadraticForm{ks2, v2.gram_s()});
    CHECK(v2.same_gram_class(lifted2.s_k, v2.gram_s()));
}

TEST_CASE("k-stable maximal isotropics of the traced space are the k-lines") {
    auto f4 = Field::make(2, 2);
    Involution frob{InvolutionKind::FrobeniusHalf};
    auto vu = QuadraticSpace::hyperbolic(f4, frob, 1, FormParameter::unitary());
    auto ks = make_kstructure(f4, frob, 2);
    auto vp = trace_down(vu, ks);

    IsotropicSet f2_mis = enumerate_maximal_isotropic(vp);
    std::vector<Subspace> stable;
    for (const auto& m : f2_mis.members)
        if (is_k_stable(ks, m)) stable.push_back(m);
    CHECK(stable.size() == 3);

    IsotropicSet k_mis = enumerate_maximal_isotropic(vu);
    REQUIRE(k_mis.size() == 3);
    for (const auto& l : k_mis.members) {
        Subspace expanded = expand_subspace(ks, l);
        bool found = false;
        for (const auto& s : stable) found = found || (s == expanded);
        CHECK(found);
    }
}

TEST_CASE("orthogonal complements and maximal isotropy transfer") {
    Rng rng(99);
    struct Case { uint32_t p, e; Eigen::Index d; InvolutionKind inv; };
    for (auto c : {Case{2, 2, 2, InvolutionKind::FrobeniusHalf}, Case{3, 2, 2, InvolutionKind::FrobeniusHalf},
                   Case{2, 2, 2, InvolutionKind::Identity}}) {
        auto k = Field::make(c.p, c.e);
        Involution sigma{c.inv};
        auto ks = make_kstructure(k, sigma, c.d);
        FormParameter param =
            c.inv == InvolutionKind::FrobeniusHalf ? FormParameter::unitary() : FormParameter::orthogonal();
        auto vk = random_space(k, sigma, param, c.d, rng);
        auto vp = trace_down(vk, ks);
        for (const auto& x : all_subspaces(*k, c.d)) {
            Subspace perp_k = expand_subspace(ks, vk.orthogonal_complement(x));
            Subspace perp_p = vp.orthogonal_complement(expand_subspace(ks, x));
            CHECK(perp_k == perp_p);
            auto [mi_p, mi_k] = check_mi_correspondence(vp, ks, vk, x);
            CHECK(mi_p == mi_k);
        }
        // X = 0 on a nonzero space is maximal on neither side.
        auto [mi_p0, mi_k0] = check_mi_correspondence(vp, ks, vk, zero_subspace(*k, c.d));
        CHECK_FALSE(mi_p0);
        CHECK_FALSE(mi_k0);
    }
}
