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

#include "qfs/quadspace.hpp"

#include <algorithm>
#include <cmath>

namespace qfs {

const char* space_type_name(SpaceType t) {
    switch (t) {
        case SpaceType::Orthogonal: return "ort";
        case SpaceType::Symplectic: return "sym";
        case SpaceType::Unitary: return "uni";
    }
    return "?";
}

FormParameter FormParameter::for_type(SpaceType t) {
    switch (t) {
        case SpaceType::Orthogonal: return orthogonal();
        case SpaceType::Symplectic: return symplectic();
        case SpaceType::Unitary: return unitary();
    }
    return orthogonal();
}

RealizedParam::RealizedParam(FieldPtr field, Involution sigma, FormParameter param)
    : field_(std::move(field)), sigma_(sigma), param_(param) {
    if (param_.lambda != 1 && param_.lambda != -1) raise(ErrorCode::InvalidParam, "lambda must be +-1");
    sigma_.validate(*field_);
    if (!sigma_.trivial() && param_.lambda == -1)
        raise(ErrorCode::InvalidParam, "unitary spaces are normalized to lambda = 1");

    const Field& f = *field_;
    const uint32_t q = f.q();
    Fq lam = lambda_elem();

    // Lambda_min = { a - lambda sigma(a) }, Lambda_max = { a : a = -lambda sigma(a) }.
    std::vector<bool> min_set(q, false), max_set(q, false);
    for (uint32_t a = 0; a < q; ++a) {
        Fq x = f.elem(a);
        min_set[(x - lam * sigma_(x)).v] = true;
        if (x == -(lam * sigma_(x))) max_set[a] = true;
    }
    member_ = (param_.choice == FormParameter::Choice::Min) ? min_set : max_set;
    size_ = static_cast<uint32_t>(std::count(member_.begin(), member_.end(), true));

    // Classification per the (sigma, lambda, Lambda) dictionary.
    if (sigma_.trivial()) {
        type_ = (size_ == 1) ? SpaceType::Orthogonal : SpaceType::Symplectic;
        if (size_ != 1 && size_ != q) raise(ErrorCode::InternalMismatch, "unexpected form parameter size");
    } else {
        // sigma != 1: Lambda_min = Lambda_max, |Lambda| = sqrt(q).
        if (min_set != max_set) raise(ErrorCode::InternalMismatch, "Lambda_min != Lambda_max with sigma != 1");
        type_ = SpaceType::Unitary;
        if (size_ * size_ != q) raise(ErrorCode::InternalMismatch, "unitary form parameter size");
    }
    delta2_ = (size_ == 1) ? 0 : (size_ == q ? 2 : 1);

    // Canonical coset representatives in a fixed complement C of Lambda:
    // orthogonal C = k, symplectic C = 0, unitary C = alpha * k0 with
    // alpha + sigma(alpha) = 1 (alpha = 1/2 in odd characteristic).
    rep_.resize(q);
    if (size_ == 1) {
        for (uint32_t a = 0; a < q; ++a) rep_[a] = a;
    } else if (size_ == q) {
        for (uint32_t a = 0; a < q; ++a) rep_[a] = 0;
    } else {
        Fq alpha = (f.p() != 2) ? f.from_int(2).inverse() : f.solve_half_unit();
        for (uint32_t a = 0; a < q; ++a) {
            Fq x = f.elem(a);
            rep_[a] = (alpha * (x + sigma_(x))).v;
        }
        for (uint32_t a = 0; a < q; ++a) {
            if (!member_[(f.elem(a) - Fq(&f, rep_[a])).v]) raise(ErrorCode::InternalMismatch, "coset representative");
            if (rep_[rep_[a]] != rep_[a]) raise(ErrorCode::InternalMismatch, "coset representative not idempotent");
        }
    }
}

QuadraticSpace::QuadraticSpace(FieldPtr field, Involution sigma, FormParameter param, Mat S)
    : QuadraticSpace(std::make_shared<const RealizedParam>(std::move(field), sigma, param), std::move(S)) {}

QuadraticSpace::QuadraticSpace(std::shared_ptr<const RealizedParam> realized, Mat S)
    : realized_(std::move(realized)), S_(std::move(S)) {
    if (S_.rows() != S_.cols()) raise(ErrorCode::DimensionMismatch, "Gram matrix must be square");
    Fq lam = realized_->lambda_elem();
    H_ = S_ + lam * apply_inv(Mat(S_.transpose()), realized_->sigma());
    // lambda-hermitian symmetry is automatic; nondegeneracy is not.
    if (rank(H_) != H_.rows()) raise(ErrorCode::Degenerate, "hermitian Gram is singular");
}

Fq QuadraticSpace::s_form(const RowVec& x, const RowVec& y) const {
    if (x.cols() != dim() || y.cols() != dim()) raise(ErrorCode::DimensionMismatch, "s_form");
    RowVec sy = apply_inv(y, sigma());
    Fq acc = field().zero();
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (x(i).is_zero()) continue;
        Fq row = field().zero();
        for (Eigen::Index j = 0; j < dim(); ++j) row += S_(i, j) * sy(j);
        acc += x(i) * row;
    }
    return acc;
}

Fq QuadraticSpace::h_form(const RowVec& x, const RowVec& y) const {
    if (x.cols() != dim() || y.cols() != dim()) raise(ErrorCode::DimensionMismatch, "h_form");
    RowVec sy = apply_inv(y, sigma());
    Fq acc = field().zero();
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (x(i).is_zero()) continue;
        Fq row = field().zero();
        for (Eigen::Index j = 0; j < dim(); ++j) row += H_(i, j) * sy(j);
        acc += x(i) * row;
    }
    return acc;
}

Fq QuadraticSpace::eval_q(const RowVec& v) const { return realized_->coset_rep(s_form(v, v)); }

Subspace QuadraticSpace::orthogonal_complement(const Subspace& x) const {
    if (x.ambient != dim()) raise(ErrorCode::AmbientMismatch, "orthogonal complement");
    // { y : (X H) sigma(y)^T = 0 }: take sigma of the right kernel of X H.
    Mat m = x.basis * H_;
    Subspace ker = right_kernel(m, field());
    return span(dim(), apply_inv(ker.basis, sigma()));
}

bool QuadraticSpace::is_isotropic(const Subspace& x) const {
    if (x.ambient != dim()) raise(ErrorCode::AmbientMismatch, "isotropy test");
    for (Eigen::Index i = 0; i < x.dim(); ++i) {
        if (!eval_q(RowVec(x.basis.row(i))).is_zero()) return false;
        for (Eigen::Index j = i + 1; j < x.dim(); ++j) {
            if (!eval_q(RowVec(x.basis.row(i) + x.basis.row(j))).is_zero()) return false;
        }
    }
    return orthogonal_complement(x).contains(x);
}

bool QuadraticSpace::is_maximal_isotropic(const Subspace& x) const {
    if (!is_isotropic(x)) return false;
    return orthogonal_complement(x) == x;
}

QuadraticSpace QuadraticSpace::hyperbolic(FieldPtr field, Involution sigma, Eigen::Index n, FormParameter param) {
    Mat S = zeros(*field, 2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) S(i, n + i) = field->one();
    return QuadraticSpace(std::move(field), sigma, param, std::move(S));
}

Subspace QuadraticSpace::standard_lagrangian() const {
    Eigen::Index n = dim() / 2;
    Mat m = zeros(field(), n, dim());
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = field().one();
    return span(dim(), m);
}

bool QuadraticSpace::same_gram_class(const Mat& s1, const Mat& s2) const {
    Mat d = s1 - s2;
    Fq lam = realized_->lambda_elem();
    Mat minus_lam_dstar = -(lam * apply_inv(Mat(d.transpose()), sigma()));
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j)
            if (d(i, j) != minus_lam_dstar(i, j)) return false;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        if (!realized_->in_lambda(d(i, i))) return false;
    return true;
}

RowVec InducedSpace::project(const RowVec& v) const {
    RowVec c = xperp.coordinates(v);
    return coord_quot.project(c);
}

RowVec InducedSpace::lift(const RowVec& u) const {
    if (u.cols() != space.dim()) raise(ErrorCode::DimensionMismatch, "quotient lift");
    RowVec out = zero_vec(space.field(), xperp.ambient);
    for (Eigen::Index k = 0; k < u.cols(); ++k)
        if (!u(k).is_zero()) out += u(k) * section_ambient.row(k);
    return out;
}

Subspace InducedSpace::project_subspace(const Subspace& s) const {
    Mat rows(s.dim(), space.dim());
    for (Eigen::Index i = 0; i < s.dim(); ++i) rows.row(i) = project(RowVec(s.basis.row(i)));
    return span(space.dim(), rows);
}

InducedSpace quotient_space(const QuadraticSpace& v, const Subspace& x) {
    if (!v.is_isotropic(x)) raise(ErrorCode::NotIsotropic, "quotient by a non-isotropic subspace");
    Subspace xperp = v.orthogonal_complement(x);
    // X^perp-coordinates of X (RREF coordinate extraction).
    Mat xc(x.dim(), xperp.dim());
    for (Eigen::Index i = 0; i < x.dim(); ++i) xc.row(i) = xperp.coordinates(RowVec(x.basis.row(i)));
    Quotient cq = quotient(xperp.dim(), span(xperp.dim(), xc));
    // Lift the quotient coordinate basis through the section into ambient.
    Mat section(cq.dim, v.dim());
    for (Eigen::Index k = 0; k < cq.dim; ++k) {
        RowVec unit = zero_vec(v.field(), cq.dim);
        unit(k) = v.field().one();
        RowVec coord = cq.section(unit);
        RowVec amb = zero_vec(v.field(), v.dim());
        for (Eigen::Index i = 0; i < xperp.dim(); ++i)
            if (!coord(i).is_zero()) amb += coord(i) * xperp.basis.row(i);
        section.row(k) = amb;
    }
    Mat sq(cq.dim, cq.dim);
    for (Eigen::Index i = 0; i < cq.dim; ++i)
        for (Eigen::Index j = 0; j < cq.dim; ++j)
            sq(i, j) = v.s_form(RowVec(section.row(i)), RowVec(section.row(j)));
    QuadraticSpace quot(v.realized_ptr(), std::move(sq));
    return InducedSpace{std::move(quot), x, std::move(xperp), std::move(cq), std::move(section)};
}

Subspace project_maximal_isotropic(const QuadraticSpace& v, const InducedSpace& quot, const Subspace& w) {
    if (!v.is_maximal_isotropic(w)) raise(ErrorCode::NotMaximalIsotropic, "projection input");
    Subspace inter = intersect(w, quot.xperp);
    Subspace z = sum(inter, quot.x);
    return quot.project_subspace(z);
}

Mat hyperbolic_basis(const QuadraticSpace& v, const Subspace& x) {
    if (!v.is_maximal_isotropic(x) || 2 * x.dim() != v.dim())
        raise(ErrorCode::NotMaximalIsotropic, "hyperbolic basis needs a maximal isotropic of half dimension");
    const Field& f = v.field();
    const Involution& sigma = v.sigma();
    const Eigen::Index n = x.dim();
    std::vector<RowVec> xs, ys, prev;
    std::vector<RowVec> rem;
    for (Eigen::Index i = 0; i < n; ++i) rem.push_back(RowVec(x.basis.row(i)));

    for (Eigen::Index step = 0; step < n; ++step) {
        RowVec xv = rem.front();
        rem.erase(rem.begin());
        // Solve h(xv, y) = 1, h(u, y) = 0 for u among previous pair vectors
        // and the remaining X-basis rows; the system is linear in sigma(y).
        Eigen::Index rows = 1 + static_cast<Eigen::Index>(prev.size() + rem.size());
        Mat lhs(rows, v.dim());
        RowVec rhs(rows);
        lhs.row(0) = xv * v.gram_h();
        rhs(0) = f.one();
        Eigen::Index r = 1;
        for (const auto& u : prev) { lhs.row(r) = u * v.gram_h(); rhs(r) = f.zero(); ++r; }
        for (const auto& u : rem) { lhs.row(r) = u * v.gram_h(); rhs(r) = f.zero(); ++r; }
        // Augmented elimination.
        Mat aug(rows, v.dim() + 1);
        aug.block(0, 0, rows, v.dim()) = lhs;
        for (Eigen::Index i = 0; i < rows; ++i) aug(i, v.dim()) = rhs(i);
        std::vector<Eigen::Index> pivots;
        Mat red = rref(aug, pivots);
        RowVec sy = zero_vec(f, v.dim());
        for (size_t i = 0; i < pivots.size(); ++i) {
            if (pivots[i] == v.dim()) raise(ErrorCode::InternalMismatch, "inconsistent hyperbolic pair system");
            sy(pivots[i]) = red(static_cast<Eigen::Index>(i), v.dim());
        }
        RowVec y = apply_inv(sy, sigma);
        // Correct y to an isotropic vector: scan c with q(y - c x) = 0; such
        // c exists because the map c -> s(y,y) - sigma(c) s(y,x) - c s(x,y)
        // is onto k/Lambda here.
        bool fixed = false;
        for (uint32_t c = 0; c < f.q(); ++c) {
            RowVec cand = y - f.elem(c) * xv;
            if (v.eval_q(cand).is_zero()) {
                y = cand;
                fixed = true;
                break;
            }
        }
        if (!fixed) raise(ErrorCode::InternalMismatch, "isotropic correction failed");
        // Keep the remaining X rows orthogonal to the new pair.
        for (auto& u : rem) u = u - v.h_form(u, y) * xv;
        xs.push_back(xv);
        ys.push_back(y);
        prev.push_back(xv);
        prev.push_back(y);
    }

    Mat t(2 * n, v.dim());
    for (Eigen::Index i = 0; i < n; ++i) t.row(i) = xs[i];
    for (Eigen::Index i = 0; i < n; ++i) t.row(n + i) = ys[i];
    // Verify the transported Gram class coincides with the standard one.
    Mat transported(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < 2 * n; ++i)
        for (Eigen::Index j = 0; j < 2 * n; ++j)
            transported(i, j) = v.s_form(RowVec(t.row(i)), RowVec(t.row(j)));
    Mat std_s = zeros(f, 2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) std_s(i, n + i) = f.one();
    if (!v.same_gram_class(transported, std_s)) raise(ErrorCode::InternalMismatch, "hyperbolic basis verification");
    return t;
}

bool is_metabolic(const QuadraticSpace& v) {
    if (v.dim() % 2 != 0) return false;
    // Peel hyperbolic pairs; at each level scan for a nonzero isotropic
    // vector (levels here are always small enough to scan).
    QuadraticSpace cur = v;
    while (cur.dim() > 0) {
        double size = 1;
        for (Eigen::Index i = 0; i < cur.dim(); ++i) size *= cur.field().q();
        if (size > 4e6) {
            // Large metabolic spaces always expose isotropic vectors to a short
            // random scan; treat a miss as an error rather than guessing.
            raise(ErrorCode::TooLarge, "metabolic test beyond the scan bound");
        }
        SpanWalker walk(cur.field(), identity(cur.field(), cur.dim()), cur.dim());
        bool found = false;
        while (walk.advance()) {
            const RowVec& w = walk.current();
            if (cur.eval_q(w).is_zero()) {
                Mat m(1, cur.dim());
                m.row(0) = w;
                InducedSpace quot = quotient_space(cur, span(cur.dim(), m));
                cur = quot.space;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

QuadraticSpace standard_space(uint32_t q, Eigen::Index n, SpaceType type) {
    uint32_t p = 0, e = 0;
    for (uint32_t cand = 2; cand <= q; ++cand) {
        if (q % cand == 0) {
            p = cand;
            uint32_t m = q;
            e = 0;
            while (m % p == 0) { m /= p; ++e; }
            if (m != 1) raise(ErrorCode::InvalidParam, "q is not a prime power");
            break;
        }
    }
    auto field = Field::make(p, e);
    Involution sigma{type == SpaceType::Unitary ? InvolutionKind::FrobeniusHalf : InvolutionKind::Identity};
    if (type == SpaceType::Unitary && e % 2 != 0) raise(ErrorCode::InvalidParam, "unitary type needs square q");
    return QuadraticSpace::hyperbolic(field, sigma, n, FormParameter::for_type(type));
}

uint64_t lambda_size_for(uint64_t q, SpaceType type) {
    switch (type) {
        case SpaceType::Orthogonal: return 1;
        case SpaceType::Symplectic: return q;
        case SpaceType::Unitary: {
            uint64_t r = static_cast<uint64_t>(std::llround(std::sqrt(static_cast<double>(q))));
            if (r * r != q) raise(ErrorCode::InvalidParam, "unitary type needs square q");
            return r;
        }
    }
    return 1;
}

}  // namespace qfs
