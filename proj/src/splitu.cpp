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

#include "qfs/splitu.hpp"

#include <functional>
#include <set>

namespace qfs {

namespace {

std::vector<uint32_t> submodule_key(const SplitSubmodule& m) {
    std::vector<uint32_t> key;
    key.push_back(static_cast<uint32_t>(m.left.dim()));
    for (Eigen::Index i = 0; i < m.left.basis.rows(); ++i)
        for (Eigen::Index j = 0; j < m.left.basis.cols(); ++j) key.push_back(m.left.basis(i, j).v);
    key.push_back(static_cast<uint32_t>(m.right.dim()));
    for (Eigen::Index i = 0; i < m.right.basis.rows(); ++i)
        for (Eigen::Index j = 0; j < m.right.basis.cols(); ++j) key.push_back(m.right.basis(i, j).v);
    return key;
}

bool pairs_orthogonal(const Subspace& a, const Subspace& b) {
    // a . b = 0 for all basis pairs under the coordinate dot product.
    for (Eigen::Index i = 0; i < a.basis.rows(); ++i)
        for (Eigen::Index j = 0; j < b.basis.rows(); ++j) {
            Fq acc = a.basis(i, 0) * b.basis(j, 0);
            for (Eigen::Index k = 1; k < a.basis.cols(); ++k) acc += a.basis(i, k) * b.basis(j, k);
            if (!acc.is_zero()) return false;
        }
    return true;
}

}  // namespace

Subspace annihilator(const SplitUnitarySpace& space, const Subspace& w) {
    if (w.ambient != space.n) raise(ErrorCode::AmbientMismatch, "annihilator input");
    if (w.dim() == 0) return full_space(*space.k0, space.n);
    return right_kernel(w.basis, *space.k0);
}

SUMaximalIsotropic su_from_base(const SplitUnitarySpace& space, const Subspace& w) {
    if (w.ambient != space.n) raise(ErrorCode::AmbientMismatch, "base subspace has wrong ambient");
    return SUMaximalIsotropic{w, annihilator(space, w), space.n};
}

SplitSubmodule su_orthogonal_complement(const SplitUnitarySpace& space, const SplitSubmodule& m) {
    // h((a,b),(c,d)) = (a.d, b.c): the complement pairs the left component
    // against right annihilators and vice versa.
    return SplitSubmodule{annihilator(space, m.right), annihilator(space, m.left)};
}

bool su_is_maximal_isotropic(const SplitUnitarySpace& space, const SplitSubmodule& m) {
    return su_orthogonal_complement(space, m) == m;
}

Eigen::Index su_intersection_dim(const SUMaximalIsotropic& a, const SUMaximalIsotropic& b) {
    if (a.n != b.n) raise(ErrorCode::AmbientMismatch, "intersection of different spaces");
    return intersect(a.w, b.w).dim() + intersect(a.wann, b.wann).dim();
}

Rat su_exact_intersection_prob(uint64_t q0, int n, int d_w, int r) {
    if (r < 0 || r > n) raise(ErrorCode::OutOfRange, "intersection dimension out of range");
    Int q(q0);
    Int num = 0;
    for (int d = 0; d <= n; ++d) {
        if (((d - d_w) - (n - r)) % 2 != 0) continue;
        int top1 = (d + d_w + r - n) / 2;
        int top2 = (d - d_w - r + n) / 2;
        if (top1 < 0 || top1 > d_w || top2 < 0 || top2 > n - d_w) continue;
        long long expo4 = static_cast<long long>(n - r) * (n - r) - static_cast<long long>(d - d_w) * (d - d_w);
        if (expo4 % 4 != 0 || expo4 < 0) raise(ErrorCode::InternalMismatch, "q-power exponent");
        Int power = boost::multiprecision::pow(q, static_cast<unsigned>(expo4 / 4));
        num += power * q_binomial(d_w, top1, q) * q_binomial(n - d_w, top2, q);
    }
    return Rat(num, galois_number(n, q));
}

Rat su_exact_intersection_prob(const SplitUnitarySpace& space, const SUMaximalIsotropic& fixed_w, int r) {
    return su_exact_intersection_prob(space.k0->q(), static_cast<int>(space.n),
                                      static_cast<int>(fixed_w.w.dim()), r);
}

Rat subspace_intersection_prob(uint64_t q0, int n, int dim_w, int dim_z, int r) {
    if (r < 0 || r > std::min(dim_w, dim_z)) return 0;
    if (dim_z - r > n - dim_w) return 0;
    Int q(q0);
    // #{Z : dim(W cap Z) = r} = [dim_w r] q^{(dim_w - r)(dim_z - r)} [n - dim_w, dim_z - r].
    Int count = q_binomial(dim_w, r, q) *
                boost::multiprecision::pow(q, static_cast<unsigned>((dim_w - r) * (dim_z - r))) *
                q_binomial(n - dim_w, dim_z - r, q);
    return Rat(count, q_binomial(n, dim_z, q));
}

std::vector<SUMaximalIsotropic> su_enumerate_from_bases(const SplitUnitarySpace& space) {
    std::vector<SUMaximalIsotropic> out;
    for (const auto& w : all_subspaces(*space.k0, space.n)) out.push_back(su_from_base(space, w));
    return out;
}

std::vector<SUMaximalIsotropic> su_enumerate_generic(const SplitUnitarySpace& space) {
    const Field& f = *space.k0;
    const Eigen::Index n = space.n;
    std::vector<SplitSubmodule> results;
    std::set<std::vector<uint32_t>> seen;

    // Pair vectors (vl, vr) walk the full k0^n x k0^n grid; a candidate can
    // extend M = (A, B) iff vl . vr = 0, vl kills B and vr kills A.
    std::function<void(const SplitSubmodule&)> dfs = [&](const SplitSubmodule& m) {
        if (m.k0_dim() == n) {
            if (su_is_maximal_isotropic(space, m)) results.push_back(m);
            return;
        }
        SpanWalker wl(f, identity(f, n), n);
        do {
            const RowVec& vl = wl.current();
            SpanWalker wr(f, identity(f, n), n);
            do {
                const RowVec& vr = wr.current();
                bool lzero = true, rzero = true;
                for (Eigen::Index j = 0; j < n; ++j) {
                    lzero = lzero && vl(j).is_zero();
                    rzero = rzero && vr(j).is_zero();
                }
                if (lzero && rzero) continue;
                Fq dot = f.zero();
                for (Eigen::Index j = 0; j < n; ++j) dot += vl(j) * vr(j);
                if (!dot.is_zero()) continue;
                Subspace left = m.left, right = m.right;
                if (!lzero) {
                    if (m.left.contains(vl) && rzero) continue;
                    Mat stacked(m.left.dim() + 1, n);
                    if (m.left.dim() > 0) stacked.topRows(m.left.dim()) = m.left.basis;
                    stacked.row(m.left.dim()) = vl;
                    left = span(n, stacked);
                }
                if (!rzero) {
                    Mat stacked(m.right.dim() + 1, n);
                    if (m.right.dim() > 0) stacked.topRows(m.right.dim()) = m.right.basis;
                    stacked.row(m.right.dim()) = vr;
                    right = span(n, stacked);
                }
                SplitSubmodule grown{left, right};
                if (grown.k0_dim() > n || grown.k0_dim() == m.k0_dim()) continue;
                if (!pairs_orthogonal(grown.left, grown.right)) continue;
                if (seen.insert(submodule_key(grown)).second) dfs(grown);
            } while (wr.advance());
        } while (wl.advance());
    };

    SplitSubmodule empty{zero_subspace(f, n), zero_subspace(f, n)};
    dfs(empty);

    std::vector<SUMaximalIsotropic> out;
    out.reserve(results.size());
    for (const auto& m : results) out.push_back(SUMaximalIsotropic{m.left, m.right, n});
    std::sort(out.begin(), out.end(), [](const SUMaximalIsotropic& a, const SUMaximalIsotropic& b) {
        return submodule_key(a.as_submodule()) < submodule_key(b.as_submodule());
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SUMaximalIsotropic& a, const SUMaximalIsotropic& b) {
                              return a.as_submodule() == b.as_submodule();
                          }),
              out.end());
    return out;
}

}  // namespace qfs
