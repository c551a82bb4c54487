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

#include "qfs/quadspace.hpp"

using namespace qfs;

namespace {

RowVec make_vec(const Field& f, std::initializer_list<uint32_t> vals) {
    RowVec v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (uint32_t x : vals) v(i++) = f.elem(x);
    return v;
}

Subspace line(const QuadraticSpace& v, const RowVec& gen) {
    Mat m(1, v.dim());
    m.row(0) = gen;
    return span(v.dim(), m);
}

// All lines through the origin, one canonical representative each.
std::vector<Subspace> all_lines(const QuadraticSpace& v) {
    return all_subspaces_of_dim(v.field(), v.dim(), 1);
}

QuadraticSpace random_metabolic(const QuadraticSpace& base, std::mt19937_64& rng, Mat* basis_out) {
    const Field& f = base.field();
    for (;;) {
        Mat p(base.dim(), base.dim());
        for (Eigen::Index i = 0; i < base.dim(); ++i)
            for (Eigen::Index j = 0; j < base.dim(); ++j) p(i, j) = f.elem(static_cast<uint32_t>(rng() % f.q()));
        if (rank(p) != base.dim()) continue;
        Mat s(base.dim(), base.dim());
        for (Eigen::Index i = 0; i < base.dim(); ++i)
            for (Eigen::Index j = 0; j < base.dim(); ++j)
                s(i, j) = base.s_form(RowVec(p.row(i)), RowVec(p.row(j)));
        if (basis_out) *basis_out = p;
        return QuadraticSpace(base.field_ptr(), base.sigma(), base.realized().param(), s);
    }
}

}  // namespace

TEST_CASE("hyperbolic plane over GF(2), orthogonal") {
    auto f2 = Field::make(2, 1);
    auto v = QuadraticSpace::hyperbolic(f2, Involution{}, 1, FormParameter::orthogonal());
    CHECK(v.type() == SpaceType::Orthogonal);
    CHECK(v.realized().lambda_size() == 1);
    CHECK(v.gram_s()(0, 1) == f2->one());
    CHECK(v.gram_h()(0, 1) == f2->one());
    CHECK(v.gram_h()(1, 0) == f2->one());
    CHECK(v.gram_h()(0, 0) == f2->zero());
    // q(x, y) = x y.
    CHECK(v.eval_q(make_vec(*f2, {0, 0})) == f2->zero());
    CHECK(v.eval_q(make_vec(*f2, {1, 0})) == f2->zero());
    CHECK(v.eval_q(make_vec(*f2, {0, 1})) == f2->zero());
    CHECK(v.eval_q(make_vec(*f2, {1, 1})) == f2->one());
}

TEST_CASE("hyperbolic plane over GF(2), symplectic") {
    auto f2 = Field::make(2, 1);
    auto v = QuadraticSpace::hyperbolic(f2, Involution{}, 1, FormParameter::symplectic());
    CHECK(v.type() == SpaceType::Symplectic);
    CHECK(v.realized().lambda_size() == 2);
    for (uint32_t a = 0; a < 2; ++a)
        for (uint32_t b = 0; b < 2; ++b) CHECK(v.eval_q(make_vec(*f2, {a, b})) == f2->zero());
}

TEST_CASE("hyperbolic line over GF(4), unitary") {
    auto f4 = Field::make(2, 2);
    Involution sigma{InvolutionKind::FrobeniusHalf};
    auto v = QuadraticSpace::hyperbolic(f4, sigma, 1, FormParameter::unitary());
    CHECK(v.type() == SpaceType::Unitary);
    CHECK(v.realized().lambda_size() == 2);
    CHECK(v.realized().delta_half_units() == 1);
    // Lambda is the prime subfield here (char 2): q(v) = 0 iff s(v,v) in {0,1}.
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b) {
            RowVec w = make_vec(*f4, {a, b});
            Fq sv = v.s_form(w, w);
            CHECK(v.eval_q(w).is_zero() == (sv.v <= 1));
        }
}

TEST_CASE("form parameter realizations across characteristic") {
    auto f3 = Field::make(3, 1);
    RealizedParam ort(f3, Involution{}, FormParameter::orthogonal());
    CHECK(ort.lambda_size() == 1);
    CHECK(ort.delta_half_units() == 0);
    RealizedParam sym(f3, Involution{}, FormParameter::symplectic());
    CHECK(sym.lambda_size() == 3);
    CHECK(sym.delta_half_units() == 2);

    auto f9 = Field::make(3, 2);
    Involution frob{InvolutionKind::FrobeniusHalf};
    RealizedParam uni(f9, frob, FormParameter::unitary());
    CHECK(uni.lambda_size() == 3);
    CHECK(uni.delta_half_units() == 1);
    // Lambda is the trace-zero line in odd characteristic.
    for (uint32_t a = 0; a < 9; ++a) {
        Fq x = f9->elem(a);
        CHECK(uni.in_lambda(x) == (x + frob(x) == f9->zero()));
    }
    // Min and Max realize the same subgroup when sigma != 1.
    RealizedParam uni_min(f9, frob, FormParameter{1, FormParameter::Choice::Min});
    for (uint32_t a = 0; a < 9; ++a) CHECK(uni.in_lambda(f9->elem(a)) == uni_min.in_lambda(f9->elem(a)));

    CHECK_THROWS_AS(RealizedParam(f9, frob, FormParameter{-1, FormParameter::Choice::Max}), Error);
    CHECK_THROWS_AS(RealizedParam(f3, frob, FormParameter::unitary()), Error);  // e odd
}

TEST_CASE("degenerate Gram matrices are rejected") {
    auto f2 = Field::make(2, 1);
    Mat s = zeros(*f2, 2, 2);
    CHECK_THROWS_AS(QuadraticSpace(f2, Involution{}, FormParameter::orthogonal(), s), Error);
}

TEST_CASE("hermitian symmetry and symplectic alternation") {
    std::mt19937_64 rng(17);
    for (auto type : {SpaceType::Orthogonal, SpaceType::Symplectic}) {
        for (uint32_t q : {2u, 3u}) {
            auto base = standard_space(q, 2, type);
            Mat dummy;
            auto v = random_metabolic(base, rng, &dummy);
            Fq lam = v.realized().lambda_elem();
            Mat hstar = apply_inv(Mat(v.gram_h().transpose()), v.sigma());
            for (Eigen::Index i = 0; i < v.dim(); ++i)
                for (Eigen::Index j = 0; j < v.dim(); ++j) CHECK(v.gram_h()(i, j) == lam * hstar(i, j));
            if (type == SpaceType::Symplectic) {
                SpanWalker walk(v.field(), identity(v.field(), v.dim()), v.dim());
                do {
                    CHECK(v.h_form(walk.current(), walk.current()).is_zero());
                } while (walk.advance());
            }
        }
    }
}

TEST_CASE("polar identity and scaling, exhaustive on small spaces") {
    std::mt19937_64 rng(23);
    std::vector<QuadraticSpace> spaces;
    spaces.push_back(standard_space(2, 1, SpaceType::Orthogonal));
    spaces.push_back(standard_space(3, 1, SpaceType::Symplectic));
    spaces.push_back(standard_space(4, 1, SpaceType::Unitary));
    spaces.push_back(standard_space(9, 1, SpaceType::Unitary));
    for (const auto& base : spaces) {
        Mat dummy;
        auto v = random_metabolic(base, rng, &dummy);
        std::vector<RowVec> all = full_space(v.field(), v.dim()).enumerate_vectors(v.field());
        for (const auto& x : all)
            for (const auto& y : all) {
                RowVec s = x + y;
                Fq lhs = v.eval_q(s);
                Fq rhs = v.realized().coset_rep(v.s_form(x, x) + v.s_form(y, y) + v.h_form(x, y));
                CHECK(lhs == rhs);
            }
        for (uint32_t a = 0; a < v.field().q(); ++a) {
            Fq c = v.field().elem(a);
            for (const auto& x : all) {
                RowVec cx = c * x;
                CHECK(v.eval_q(cx) == v.realized().coset_rep(c * v.sigma()(c) * v.s_form(x, x)));
            }
        }
    }
}

TEST_CASE("orthogonal complement") {
    auto f3 = Field::make(3, 1);
    auto v = QuadraticSpace::hyperbolic(f3, Involution{}, 2, FormParameter::orthogonal());

    CHECK(v.orthogonal_complement(zero_subspace(*f3, 4)) == full_space(*f3, 4));

    auto plane = QuadraticSpace::hyperbolic(f3, Involution{}, 1, FormParameter::orthogonal());
    Subspace axis = line(plane, make_vec(*f3, {1, 0}));
    CHECK(plane.orthogonal_complement(axis) == axis);

    // Brute-force oracle on random subspaces of the dim-4 space.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Mat m(2, 4);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = f3->elem(static_cast<uint32_t>(rng() % 3));
        Subspace x = span(4, m);
        Subspace perp = v.orthogonal_complement(x);
        CHECK(x.dim() + perp.dim() == 4);
        CHECK(v.orthogonal_complement(perp) == x);
        SpanWalker walk(*f3, identity(*f3, 4), 4);
        do {
            const RowVec& y = walk.current();
            bool orth = true;
            for (Eigen::Index i = 0; i < x.dim() && orth; ++i) orth = v.h_form(RowVec(x.basis.row(i)), y).is_zero();
            CHECK(orth == perp.contains(y));
        } while (walk.advance());
    }
}

TEST_CASE("maximal isotropic predicate on planes") {
    auto f2 = Field::make(2, 1);
    auto ort = QuadraticSpace::hyperbolic(f2, Involution{}, 1, FormParameter::orthogonal());
    CHECK(ort.is_maximal_isotropic(ort.standard_lagrangian()));
    CHECK_FALSE(ort.is_maximal_isotropic(line(ort, make_vec(*f2, {1, 1}))));
    int count = 0;
    for (const auto& l : all_lines(ort)) count += ort.is_maximal_isotropic(l);
    CHECK(count == 2);  // 1 + |Lambda|

    auto sym = QuadraticSpace::hyperbolic(f2, Involution{}, 1, FormParameter::symplectic());
    CHECK(sym.is_maximal_isotropic(line(sym, make_vec(*f2, {1, 1}))));
    count = 0;
    for (const auto& l : all_lines(sym)) count += sym.is_maximal_isotropic(l);
    CHECK(count == 3);

    auto f4 = Field::make(2, 2);
    auto uni = QuadraticSpace::hyperbolic(f4, Involution{InvolutionKind::FrobeniusHalf}, 1, FormParameter::unitary());
    count = 0;
    for (const auto& l : all_lines(uni)) count += uni.is_maximal_isotropic(l);
    CHECK(count == 3);
}

TEST_CASE("maximal isotropic agrees with self-perpendicularity off the orthogonal char-2 case") {
    struct Case { uint32_t q; SpaceType t; };
    for (auto [q, t] : {Case{3, SpaceType::Orthogonal}, Case{2, SpaceType::Symplectic},
                        Case{3, SpaceType::Symplectic}, Case{4, SpaceType::Unitary}}) {
        auto v = standard_space(q, 1, t);
        for (const auto& s : all_subspaces(v.field(), v.dim())) {
            bool self_perp = (v.orthogonal_complement(s) == s);
            CHECK(v.is_maximal_isotropic(s) == self_perp);
        }
    }
    // Orthogonal char 2: q-vanishing genuinely matters.
    auto v2 = standard_space(2, 1, SpaceType::Orthogonal);
    Subspace diag = line(v2, make_vec(*Field::make(2, 1), {1, 1}));
    CHECK(v2.orthogonal_complement(diag) == diag);
    CHECK_FALSE(v2.is_maximal_isotropic(diag));
}

TEST_CASE("quotient space") {
    auto f2 = Field::make(2, 1);
    auto v = QuadraticSpace::hyperbolic(f2, Involution{}, 2, FormParameter::orthogonal());

    // X = 0 gives V back.
    InducedSpace q0 = quotient_space(v, zero_subspace(*f2, 4));
    CHECK(q0.space.dim() == 4);
    CHECK(v.same_gram_class(q0.space.gram_s(), v.gram_s()));

    // Quotient by an isotropic line: a hyperbolic plane with 1 + |Lambda|
    // isotropic lines.
    Subspace x = line(v, make_vec(*f2, {1, 0, 0, 0}));
    InducedSpace q1 = quotient_space(v, x);
    CHECK(q1.space.dim() == 2);
    CHECK(q1.space.type() == v.type());
    int count = 0;
    for (const auto& l : all_lines(q1.space)) count += q1.space.is_maximal_isotropic(l);
    CHECK(count == 2);

    // Projection and section compose to the identity on the quotient.
    SpanWalker walk(*f2, identity(*f2, 2), 2);
    do {
        CHECK(q1.project(q1.lift(walk.current())) == walk.current());
    } while (walk.advance());

    // Well-definedness: shifting a representative by X changes nothing.
    for (const auto& w : q1.xperp.enumerate_vectors(*f2))
        for (const auto& xv : x.enumerate_vectors(*f2)) {
            RowVec shifted = w + xv;
            CHECK(q1.project(shifted) == q1.project(w));
            CHECK(v.eval_q(shifted) == v.eval_q(w));
        }

    // X maximal: zero quotient.
    InducedSpace q2 = quotient_space(v, v.standard_lagrangian());
    CHECK(q2.space.dim() == 0);

    CHECK_THROWS_AS(quotient_space(v, line(v, make_vec(*f2, {1, 0, 1, 0}))), Error);
}

TEST_CASE("projection of maximal isotropics") {
    auto f2 = Field::make(2, 1);
    auto v = QuadraticSpace::hyperbolic(f2, Involution{}, 2, FormParameter::symplectic());
    Subspace w = v.standard_lagrangian();

    // X = 0: W unchanged (as coordinates, the identity section).
    InducedSpace q0 = quotient_space(v, zero_subspace(*f2, 4));
    CHECK(project_maximal_isotropic(v, q0, w).dim() == 2);

    // X inside W: the image is W / X.
    Subspace x = line(v, make_vec(*f2, {1, 0, 0, 0}));
    InducedSpace q1 = quotient_space(v, x);
    Subspace img = project_maximal_isotropic(v, q1, w);
    CHECK(img.dim() == 1);
    CHECK(q1.space.is_maximal_isotropic(img));

    // Every (W, X) pair with dim X = 1: image is maximal isotropic.
    std::vector<Subspace> mis;
    for (const auto& s : all_subspaces_of_dim(*f2, 4, 2))
        if (v.is_maximal_isotropic(s)) mis.push_back(s);
    CHECK(mis.size() == 15);
    int checked = 0;
    for (const auto& l : all_lines(v)) {
        if (!v.is_isotropic(l)) continue;
        InducedSpace q = quotient_space(v, l);
        for (const auto& wi : mis) {
            Subspace image = project_maximal_isotropic(v, q, wi);
            CHECK(q.space.is_maximal_isotropic(image));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("hyperbolic basis") {
    auto f3 = Field::make(3, 1);

    // Standard space with the standard Lagrangian: T is the identity.
    auto v = QuadraticSpace::hyperbolic(f3, Involution{}, 2, FormParameter::orthogonal());
    Mat t = hyperbolic_basis(v, v.standard_lagrangian());
    CHECK(t == identity(*f3, 4));

    // Swapped generator in the plane.
    auto plane = QuadraticSpace::hyperbolic(f3, Involution{}, 1, FormParameter::orthogonal());
    Subspace x = line(plane, make_vec(*f3, {0, 1}));
    Mat ts = hyperbolic_basis(plane, x);
    CHECK(ts(0, 0) == f3->zero());
    CHECK(ts(0, 1) == f3->one());
    CHECK(ts(1, 0) == f3->one());
    CHECK(ts(1, 1) == f3->zero());

    // Random metabolic spaces: construct-and-verify (hyperbolic_basis throws
    // if the transported Gram class is wrong, so success is the assertion).
    std::mt19937_64 rng(41);
    struct Case { uint32_t q; SpaceType t; Eigen::Index n; };
    for (auto [q, type, n] : {Case{2, SpaceType::Orthogonal, 3}, Case{3, SpaceType::Orthogonal, 2},
                              Case{2, SpaceType::Symplectic, 3}, Case{3, SpaceType::Symplectic, 2},
                              Case{4, SpaceType::Unitary, 2}, Case{4, SpaceType::Unitary, 3}}) {
        auto base = standard_space(q, n, type);
        for (int trial = 0; trial < 5; ++trial) {
            Mat p;
            auto vr = random_metabolic(base, rng, &p);
            // In vr-coordinates u represents the base-space vector u p, so the
            // standard Lagrangian pulls back through the inverse of p.
            Mat pinv = inverse(p, vr.field());
            Mat xb(n, 2 * n);
            for (Eigen::Index i = 0; i < n; ++i) xb.row(i) = pinv.row(i);
            Subspace xs = span(2 * n, xb);
            REQUIRE(vr.is_maximal_isotropic(xs));
            Mat tr = hyperbolic_basis(vr, xs);
            CHECK(rank(tr) == 2 * n);
            Mat first(n, 2 * n);
            for (Eigen::Index i = 0; i < n; ++i) first.row(i) = tr.row(i);
            CHECK(span(2 * n, first) == xs);
        }
    }
}

TEST_CASE("metabolic detection") {
    auto f3 = Field::make(3, 1);
    CHECK(is_metabolic(standard_space(3, 2, SpaceType::Orthogonal)));
    CHECK(is_metabolic(standard_space(2, 2, SpaceType::Symplectic)));
    // Anisotropic plane over GF(3): x^2 + y^2 has no nontrivial zeros.
    Mat s = zeros(*f3, 2, 2);
    s(0, 0) = f3->one();
    s(1, 1) = f3->one();
    auto aniso = QuadraticSpace(f3, Involution{}, FormParameter::orthogonal(), s);
    CHECK_FALSE(is_metabolic(aniso));
    // Odd dimension is never metabolic.
    Mat s1 = zeros(*f3, 1, 1);
    s1(0, 0) = f3->one();
    CHECK_FALSE(is_metabolic(QuadraticSpace(f3, Involution{}, FormParameter::orthogonal(), s1)));
}
