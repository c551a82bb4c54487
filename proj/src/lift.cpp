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

#include "qfs/lift.hpp"

namespace qfs {

namespace {

// Multiplication-by-a operator on the flat GF(p) coordinates.
Mat mult_by(const KStructure& ks, Fq a) {
    const Field& k = *ks.k;
    const Field& fp = *ks.fp;
    const Eigen::Index e = k.e();
    Mat m = zeros(fp, ks.flat_dim(), ks.flat_dim());
    for (Eigen::Index i = 0; i < ks.d; ++i)
        for (Eigen::Index t = 0; t < e; ++t) {
            // a * x^t e_i expanded back into the flat basis.
            uint32_t xt = k.pow(k.p() % k.q(), t);
            Fq val = a * Fq(&k, xt);
            uint32_t digits = val.v;
            for (Eigen::Index s = 0; s < e; ++s) {
                uint32_t c = digits % k.p();
                digits /= k.p();
                m(i * e + t, i * e + s) = fp.from_int(c);
            }
        }
    return m;
}

// Trace-dual basis of the power basis {x^t}: rows of the inverse trace Gram.
std::vector<Fq> dual_basis(const Field& k) {
    const Eigen::Index e = k.e();
    auto fp = Field::make(k.p(), 1);
    Mat tr = zeros(*fp, e, e);
    for (Eigen::Index u = 0; u < e; ++u)
        for (Eigen::Index v = 0; v < e; ++v) {
            uint32_t prod = k.mul(k.pow(k.p(), u), k.pow(k.p(), v));
            tr(u, v) = fp->from_int(k.trace_to_prime(prod));
        }
    Mat inv = inverse(tr, *fp);
    std::vector<Fq> dual(e, k.zero());
    for (Eigen::Index u = 0; u < e; ++u) {
        Fq acc = k.zero();
        for (Eigen::Index v = 0; v < e; ++v) acc += k.from_int(inv(u, v).v) * Fq(&k, k.pow(k.p(), v));
        dual[u] = acc;
    }
    return dual;
}

}  // namespace

KStructure make_kstructure(FieldPtr k, Involution sigma, Eigen::Index d) {
    sigma.validate(*k);
    KStructure ks;
    ks.k = std::move(k);
    ks.sigma = sigma;
    ks.d = d;
    ks.fp = Field::make(ks.k->p(), 1);
    Fq x(ks.k.get(), ks.k->e() > 1 ? ks.k->p() : 1 % ks.k->q());
    ks.mult_x = mult_by(ks, x);
    ks.mult_sigma_x = mult_by(ks, sigma(x));
    return ks;
}

RowVec expand_vector(const KStructure& ks, const RowVec& v_over_k) {
    if (v_over_k.cols() != ks.d) raise(ErrorCode::DimensionMismatch, "expand_vector");
    const Eigen::Index e = ks.k->e();
    RowVec out = zero_vec(*ks.fp, ks.flat_dim());
    for (Eigen::Index i = 0; i < ks.d; ++i) {
        uint32_t digits = v_over_k(i).value_in(ks.k.get());
        for (Eigen::Index t = 0; t < e; ++t) {
            out(i * e + t) = ks.fp->from_int(digits % ks.k->p());
            digits /= ks.k->p();
        }
    }
    return out;
}

RowVec contract_vector(const KStructure& ks, const RowVec& v_over_p) {
    if (v_over_p.cols() != ks.flat_dim()) raise(ErrorCode::DimensionMismatch, "contract_vector");
    const Eigen::Index e = ks.k->e();
    RowVec out = zero_vec(*ks.k, ks.d);
    for (Eigen::Index i = 0; i < ks.d; ++i) {
        uint32_t v = 0, mult = 1;
        for (Eigen::Index t = 0; t < e; ++t) {
            v += v_over_p(i * e + t).v * mult;
            mult *= ks.k->p();
        }
        out(i) = Fq(ks.k.get(), v);
    }
    return out;
}

Subspace expand_subspace(const KStructure& ks, const Subspace& x_over_k) {
    if (x_over_k.ambient != ks.d) raise(ErrorCode::AmbientMismatch, "expand_subspace");
    const Eigen::Index e = ks.k->e();
    Mat rows = zeros(*ks.fp, x_over_k.dim() * e, ks.flat_dim());
    Fq x(ks.k.get(), ks.k->e() > 1 ? ks.k->p() : 1 % ks.k->q());
    for (Eigen::Index i = 0; i < x_over_k.dim(); ++i) {
        RowVec scaled(x_over_k.basis.row(i));
        for (Eigen::Index t = 0; t < e; ++t) {
            rows.row(i * e + t) = expand_vector(ks, scaled);
            scaled = x * scaled;
        }
    }
    return span(ks.flat_dim(), rows);
}

bool is_k_stable(const KStructure& ks, const Subspace& s_over_p) {
    for (Eigen::Index i = 0; i < s_over_p.dim(); ++i) {
        RowVec moved = RowVec(s_over_p.basis.row(i)) * ks.mult_x;
        if (!s_over_p.contains(moved)) return false;
    }
    return true;
}

void validate_adjoint(const KStructure& ks, const Mat& hp) {
    if (hp.rows() != ks.flat_dim() || hp.cols() != ks.flat_dim())
        raise(ErrorCode::DimensionMismatch, "adjoint Gram size");
    Mat lhs = ks.mult_x * hp;
    Mat rhs = hp * ks.mult_sigma_x.transpose();
    for (Eigen::Index i = 0; i < hp.rows(); ++i)
        for (Eigen::Index j = 0; j < hp.cols(); ++j)
            if (lhs(i, j) != rhs(i, j)) raise(ErrorCode::NotAdjoint, "Gram does not commute with the k-action");
}

Mat lift_bilinear(const AdjointForm& f) {
    validate_adjoint(f.ks, f.hp);
    const Field& k = *f.ks.k;
    const Eigen::Index e = k.e(), d = f.ks.d;
    auto dual = dual_basis(k);
    Mat out = zeros(k, d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            Fq acc = k.zero();
            for (Eigen::Index t = 0; t < e; ++t) {
                // hp(x^t e_i, e_j) sits at flat indices (i e + t, j e).
                acc += dual[t] * k.from_int(f.hp(i * e + t, j * e).v);
            }
            out(i, j) = acc;
        }
    return out;
}

int lift_uniqueness_kernel_dim(const KStructure& ks) {
    const Field& k = *ks.k;
    const Eigen::Index e = k.e();
    // Fp-linear map u -> [ Tr(x^s u sigma(x^t)) ]_{s,t} on one k-entry.
    Mat m = zeros(*ks.fp, e, e * e);
    for (Eigen::Index basis = 0; basis < e; ++basis) {
        Fq u(&k, k.pow(k.p(), basis));
        for (Eigen::Index s = 0; s < e; ++s)
            for (Eigen::Index t = 0; t < e; ++t) {
                Fq prod = Fq(&k, k.pow(k.p(), s)) * u * ks.sigma(Fq(&k, k.pow(k.p(), t)));
                m(basis, s * e + t) = ks.fp->from_int(k.trace_to_prime(prod.v));
            }
    }
    return static_cast<int>(e - rank(m));
}

QuadraticLiftResult lift_quadratic_char2(const AdjointQuadraticForm& f) {
    const KStructure& ks = f.ks;
    if (ks.k->p() != 2) raise(ErrorCode::InvalidParam, "quadratic lifting path is for characteristic 2");
    if (!ks.sigma.trivial()) raise(ErrorCode::InvalidParam, "quadratic lifting path needs sigma = 1");
    const Field& fp = *ks.fp;
    const Eigen::Index n = ks.flat_dim();
    Mat hp = f.sp + Mat(f.sp.transpose());
    validate_adjoint(ks, hp);

    // Unknowns s_{uv} at flat index u n + v; equations over GF(2):
    //   adjointness  M_x S = S M_x^T,
    //   diagonal     s_{uu} = sp_{uu},
    //   polarization s_{uv} + s_{vu} = hp_{uv} (u < v).
    const Eigen::Index vars = n * n;
    std::vector<RowVec> lhs_rows;
    std::vector<Fq> rhs_vals;
    auto push_row = [&](RowVec&& row, Fq rhs) {
        lhs_rows.push_back(std::move(row));
        rhs_vals.push_back(rhs);
    };
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            RowVec row = zero_vec(fp, vars);
            // (M_x S)_{a,b} = sum_c (M_x)_{a,c} s_{c,b}
            for (Eigen::Index c = 0; c < n; ++c) row(c * n + b) += ks.mult_x(a, c);
            // (S M_x^T)_{a,b} = sum_c s_{a,c} (M_x)_{b,c}
            for (Eigen::Index c = 0; c < n; ++c) row(a * n + c) += ks.mult_x(b, c);
            push_row(std::move(row), fp.zero());
        }
    for (Eigen::Index u = 0; u < n; ++u) {
        RowVec row = zero_vec(fp, vars);
        row(u * n + u) = fp.one();
        push_row(std::move(row), f.sp(u, u));
    }
    for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = u + 1; v < n; ++v) {
            RowVec row = zero_vec(fp, vars);
            row(u * n + v) = fp.one();
            row(v * n + u) += fp.one();
            push_row(std::move(row), hp(u, v));
        }

    Mat aug = zeros(fp, static_cast<Eigen::Index>(lhs_rows.size()), vars + 1);
    for (size_t r = 0; r < lhs_rows.size(); ++r) {
        aug.block(static_cast<Eigen::Index>(r), 0, 1, vars) = lhs_rows[r];
        aug(static_cast<Eigen::Index>(r), vars) = rhs_vals[r];
    }
    std::vector<Eigen::Index> pivots;
    Mat red = rref(aug, pivots);
    RowVec solution = zero_vec(fp, vars);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == vars) raise(ErrorCode::NoSolution, "quadratic lift system inconsistent");
        solution(pivots[r]) = red(static_cast<Eigen::Index>(r), vars);
    }
    int ambiguity = static_cast<int>(vars - static_cast<Eigen::Index>(pivots.size()));

    Mat s_flat = zeros(fp, n, n);
    for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = 0; v < n; ++v) s_flat(u, v) = solution(u * n + v);
    Mat s_k = lift_bilinear(AdjointForm{ks, s_flat});
    return {std::move(s_k), ambiguity};
}

QuadraticSpace trace_down(const QuadraticSpace& vk, const KStructure& ks) {
    if (vk.dim() != ks.d) raise(ErrorCode::DimensionMismatch, "trace_down input");
    const Field& k = *ks.k;
    const Eigen::Index e = k.e();
    Mat sp = zeros(*ks.fp, ks.flat_dim(), ks.flat_dim());
    for (Eigen::Index i = 0; i < ks.d; ++i)
        for (Eigen::Index j = 0; j < ks.d; ++j)
            for (Eigen::Index s = 0; s < e; ++s)
                for (Eigen::Index t = 0; t < e; ++t) {
                    Fq val = Fq(&k, k.pow(k.p(), s)) * vk.gram_s()(i, j) * ks.sigma(Fq(&k, k.pow(k.p(), t)));
                    sp(i * e + s, j * e + t) = ks.fp->from_int(k.trace_to_prime(val.v));
                }
    FormParameter param;
    switch (vk.type()) {
        case SpaceType::Symplectic: param = FormParameter::symplectic(); break;
        case SpaceType::Orthogonal:
        case SpaceType::Unitary: param = FormParameter::orthogonal(); break;
    }
    return QuadraticSpace(ks.fp, Involution{}, param, sp);
}

std::pair<bool, bool> check_mi_correspondence(const QuadraticSpace& vp, const KStructure& ks,
                                              const QuadraticSpace& vk, const Subspace& x_over_k) {
    if (vp.dim() != ks.flat_dim() || vk.dim() != ks.d) raise(ErrorCode::DimensionMismatch, "mi correspondence");
    // Trace compatibility on every vector: q_p(v) = Tr(q_k(v)) with both
    // sides taken as prime-field values of the canonical representatives.
    SpanWalker walk(*ks.fp, identity(*ks.fp, ks.flat_dim()), ks.flat_dim());
    do {
        const RowVec& v = walk.current();
        RowVec v_k = contract_vector(ks, v);
        Fq qp = vp.eval_q(v);
        Fq qk = vk.s_form(v_k, v_k);
        uint32_t traced = ks.k->trace_to_prime(qk.v);
        if (vp.realized().coset_rep(qp).v != vp.realized().coset_rep(Fq(ks.fp.get(), traced)).v)
            raise(ErrorCode::NotTraceCompatible, "Tr q' != q");
    } while (walk.advance());

    Subspace x_p = expand_subspace(ks, x_over_k);
    return {vp.is_maximal_isotropic(x_p), vk.is_maximal_isotropic(x_over_k)};
}

}  // namespace qfs
