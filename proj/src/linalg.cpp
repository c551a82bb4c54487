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

#include "qfs/linalg.hpp"

#include <algorithm>

namespace qfs {

namespace {

const Field* field_of(const Mat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j).F) return m(i, j).F;
    return nullptr;
}

}  // namespace

Mat zeros(const Field& f, Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    m.setConstant(f.zero());
    return m;
}

Mat identity(const Field& f, Eigen::Index n) {
    Mat m = zeros(f, n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

RowVec zero_vec(const Field& f, Eigen::Index n) {
    RowVec v(n);
    v.setConstant(f.zero());
    return v;
}

Mat apply_inv(const Mat& m, const Involution& sigma) {
    if (sigma.trivial()) return m;
    return m.unaryExpr([&](Fq a) { return sigma(a); });
}

RowVec apply_inv(const RowVec& v, const Involution& sigma) {
    if (sigma.trivial()) return v;
    return v.unaryExpr([&](Fq a) { return sigma(a); });
}

Mat rref(const Mat& m, std::vector<Eigen::Index>& pivots) {
    Mat a = m;
    pivots.clear();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < a.rows(); ++i)
            if (!a(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row) a.row(piv).swap(a.row(row));
        Fq scale = a(row, col).inverse();
        for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * scale;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            Fq c = a(i, col);
            for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - c * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return a.topRows(row);
}

Mat rref(const Mat& m) {
    std::vector<Eigen::Index> pivots;
    return rref(m, pivots);
}

Eigen::Index rank(const Mat& m) { return rref(m).rows(); }

Mat inverse(const Mat& m, const Field& f) {
    if (m.rows() != m.cols()) raise(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    const Eigen::Index n = m.rows();
    Mat aug = zeros(f, n, 2 * n);
    aug.block(0, 0, n, n) = m;
    aug.block(0, n, n, n) = identity(f, n);
    std::vector<Eigen::Index> pivots;
    Mat r = rref(aug, pivots);
    if (r.rows() != n || pivots.size() != static_cast<size_t>(n) || pivots.back() != n - 1)
        raise(ErrorCode::Degenerate, "matrix is singular");
    return r.block(0, n, n, n);
}

bool Subspace::contains(const RowVec& v) const {
    if (v.cols() != ambient) raise(ErrorCode::AmbientMismatch, "vector has wrong ambient dimension");
    RowVec r = v;
    // Reduce against the RREF basis: each row's leading 1 clears one column.
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        Eigen::Index lead = 0;
        while (lead < ambient && basis(i, lead).is_zero()) ++lead;
        if (!r(lead).is_zero()) {
            Fq c = r(lead);
            for (Eigen::Index j = lead; j < ambient; ++j) r(j) = r(j) - c * basis(i, j);
        }
    }
    for (Eigen::Index j = 0; j < ambient; ++j)
        if (!r(j).is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    for (Eigen::Index i = 0; i < other.basis.rows(); ++i)
        if (!contains(RowVec(other.basis.row(i)))) return false;
    return true;
}

RowVec Subspace::coordinates(const RowVec& v) const {
    RowVec c(basis.rows());
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        Eigen::Index lead = 0;
        while (lead < ambient && basis(i, lead).is_zero()) ++lead;
        c(i) = v(lead);
    }
    return c;
}

bool Subspace::operator==(const Subspace& o) const {
    if (ambient != o.ambient || basis.rows() != o.basis.rows()) return false;
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
        for (Eigen::Index j = 0; j < basis.cols(); ++j)
            if (basis(i, j) != o.basis(i, j)) return false;
    return true;
}

std::vector<RowVec> Subspace::enumerate_vectors(const Field& f) const {
    const Eigen::Index d = dim();
    uint64_t count = 1;
    for (Eigen::Index i = 0; i < d; ++i) count *= f.q();
    // Precompute every scalar multiple of each basis row so the base-q digit
    // counter can step by vector differences.
    std::vector<std::vector<RowVec>> scaled(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        scaled[i].reserve(f.q());
        for (uint32_t c = 0; c < f.q(); ++c) {
            RowVec r(ambient);
            Fq s = f.elem(c);
            for (Eigen::Index j = 0; j < ambient; ++j) r(j) = s * basis(i, j);
            scaled[i].push_back(std::move(r));
        }
    }
    std::vector<RowVec> out;
    out.reserve(count);
    std::vector<uint32_t> digits(d, 0);
    RowVec v = zero_vec(f, ambient);
    for (;;) {
        out.push_back(v);
        Eigen::Index pos = 0;
        while (pos < d) {
            uint32_t c = digits[pos];
            uint32_t next = (c + 1) % f.q();
            digits[pos] = next;
            v += scaled[pos][next];
            v -= scaled[pos][c];
            if (next != 0) break;
            ++pos;
        }
        if (pos == d) break;
    }
    return out;
}

SpanWalker::SpanWalker(const Field& f, const Mat& basis_rows, Eigen::Index ambient)
    : f_(&f), dim_(basis_rows.rows()), digits_(basis_rows.rows(), 0), v_(zero_vec(f, ambient)) {
    scaled_.resize(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
        scaled_[i].reserve(f.q());
        for (uint32_t c = 0; c < f.q(); ++c) {
            RowVec r(ambient);
            Fq s = f.elem(c);
            for (Eigen::Index j = 0; j < ambient; ++j) r(j) = s * basis_rows(i, j);
            scaled_[i].push_back(std::move(r));
        }
    }
    count_ = 1;
    for (Eigen::Index i = 0; i < dim_; ++i) count_ *= f.q();
}

bool SpanWalker::advance() {
    Eigen::Index pos = 0;
    while (pos < dim_) {
        uint32_t c = digits_[pos];
        uint32_t next = (c + 1) % f_->q();
        digits_[pos] = next;
        v_ += scaled_[pos][next];
        v_ -= scaled_[pos][c];
        if (next != 0) return true;
        ++pos;
    }
    return false;
}

void SpanWalker::reset() {
    std::fill(digits_.begin(), digits_.end(), 0);
    v_ = zero_vec(*f_, v_.cols());
}

Subspace span(Eigen::Index ambient, const Mat& m) {
    Subspace s;
    s.ambient = ambient;
    s.basis = rref(m);
    return s;
}

Subspace zero_subspace(const Field& f, Eigen::Index ambient) {
    Subspace s;
    s.ambient = ambient;
    s.basis = zeros(f, 0, ambient);
    return s;
}

Subspace full_space(const Field& f, Eigen::Index ambient) {
    return span(ambient, identity(f, ambient));
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) raise(ErrorCode::AmbientMismatch, "subspace sum");
    Mat stacked(a.basis.rows() + b.basis.rows(), a.ambient);
    stacked << a.basis, b.basis;
    return span(a.ambient, stacked);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) raise(ErrorCode::AmbientMismatch, "subspace intersection");
    if (a.dim() == 0) return a;
    if (b.dim() == 0) return b;
    const Field* f = field_of(a.basis);
    if (!f) f = field_of(b.basis);
    if (!f) raise(ErrorCode::MixedRings, "cannot infer the coefficient field of empty bases");
    const Eigen::Index n = a.ambient;
    const Eigen::Index ra = a.basis.rows(), rb = b.basis.rows();
    // Zassenhaus: rref of [A | A; B | 0]; rows with zero left block carry an
    // intersection basis in the right block.
    Mat stacked = zeros(*f, ra + rb, 2 * n);
    stacked.block(0, 0, ra, n) = a.basis;
    stacked.block(0, n, ra, n) = a.basis;
    stacked.block(ra, 0, rb, n) = b.basis;
    Mat r = rref(stacked);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        bool left_zero = true;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!r(i, j).is_zero()) { left_zero = false; break; }
        if (left_zero) keep.push_back(i);
    }
    Mat inter = zeros(*f, static_cast<Eigen::Index>(keep.size()), n);
    for (size_t i = 0; i < keep.size(); ++i) inter.row(static_cast<Eigen::Index>(i)) = r.block(keep[i], n, 1, n);
    return span(n, inter);
}

Subspace right_kernel(const Mat& m, const Field& f) {
    const Eigen::Index n = m.cols();
    std::vector<Eigen::Index> pivots;
    Mat r = rref(m, pivots);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat basis = zeros(f, static_cast<Eigen::Index>(free_cols.size()), n);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        Eigen::Index fc = free_cols[k];
        basis(static_cast<Eigen::Index>(k), fc) = f.one();
        for (Eigen::Index i = 0; i < r.rows(); ++i) basis(static_cast<Eigen::Index>(k), pivots[i]) = -r(i, fc);
    }
    return span(n, basis);
}

RowVec Quotient::project(const RowVec& v) const {
    if (v.cols() != x.ambient) raise(ErrorCode::AmbientMismatch, "quotient projection");
    RowVec r = v;
    for (Eigen::Index i = 0; i < x.basis.rows(); ++i) {
        Eigen::Index lead = 0;
        while (lead < x.ambient && x.basis(i, lead).is_zero()) ++lead;
        if (!r(lead).is_zero()) {
            Fq c = r(lead);
            for (Eigen::Index j = lead; j < x.ambient; ++j) r(j) = r(j) - c * x.basis(i, j);
        }
    }
    RowVec out(dim);
    for (Eigen::Index k = 0; k < dim; ++k) out(k) = r(free_cols[k]);
    return out;
}

RowVec Quotient::section(const RowVec& u) const {
    if (u.cols() != dim) raise(ErrorCode::DimensionMismatch, "quotient section");
    RowVec v(x.ambient);
    v.setConstant(Fq(0));
    for (Eigen::Index k = 0; k < dim; ++k) v(free_cols[k]) = u(k);
    // Pivot coordinates stay zero, so reduction against x is a no-op and
    // project(section(u)) == u holds exactly.
    if (dim > 0 && u(0).F) {
        const Field* f = u(0).F;
        for (Eigen::Index j = 0; j < x.ambient; ++j)
            if (!v(j).F) v(j) = f->zero();
    }
    return v;
}

Mat Quotient::project_rows(const Mat& rows) const {
    Mat out(rows.rows(), dim);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) out.row(i) = project(RowVec(rows.row(i)));
    return out;
}

Mat Quotient::section_rows(const Mat& rows) const {
    Mat out(rows.rows(), x.ambient);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) out.row(i) = section(RowVec(rows.row(i)));
    return out;
}

Quotient quotient(Eigen::Index ambient_dim, const Subspace& x) {
    if (x.ambient != ambient_dim) raise(ErrorCode::AmbientMismatch, "quotient of mismatched ambient");
    Quotient q;
    q.x = x;
    std::vector<bool> is_pivot(ambient_dim, false);
    for (Eigen::Index i = 0; i < x.basis.rows(); ++i) {
        Eigen::Index lead = 0;
        while (lead < ambient_dim && x.basis(i, lead).is_zero()) ++lead;
        is_pivot[lead] = true;
    }
    for (Eigen::Index j = 0; j < ambient_dim; ++j)
        if (!is_pivot[j]) q.free_cols.push_back(j);
    q.dim = static_cast<Eigen::Index>(q.free_cols.size());
    return q;
}

std::vector<Subspace> all_subspaces(const Field& f, Eigen::Index n) {
    std::vector<Subspace> out;
    for (Eigen::Index d = 0; d <= n; ++d) {
        auto layer = all_subspaces_of_dim(f, n, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<Subspace> all_subspaces_of_dim(const Field& f, Eigen::Index n, Eigen::Index d) {
    // Grow subspaces one dimension at a time; the canonical-chain rule (only
    // extend by the lex-least new vector) visits each subspace exactly once.
    std::vector<RowVec> vectors = full_space(f, n).enumerate_vectors(f);
    struct Node {
        Subspace s;
        uint64_t last = 0;  // index of the most recently added canonical generator
    };
    std::vector<Node> layer{{zero_subspace(f, n), 0}};
    for (Eigen::Index step = 0; step < d; ++step) {
        std::vector<Node> next;
        for (const auto& node : layer) {
            for (uint64_t i = node.last + 1; i < vectors.size(); ++i) {
                const RowVec& v = vectors[i];
                if (node.s.contains(v)) continue;
                // v must be the lex-least vector outside node.s in the span.
                Mat stacked(node.s.basis.rows() + 1, n);
                if (node.s.basis.rows() > 0) stacked.topRows(node.s.basis.rows()) = node.s.basis;
                stacked.row(node.s.basis.rows()) = v;
                Subspace grown = span(n, stacked);
                bool canonical = true;
                for (uint64_t j = 1; j < i; ++j) {
                    if (!node.s.contains(vectors[j]) && grown.contains(vectors[j])) { canonical = false; break; }
                }
                if (canonical) next.push_back({grown, i});
            }
        }
        layer = std::move(next);
    }
    std::vector<Subspace> out;
    out.reserve(layer.size());
    for (auto& node : layer) out.push_back(std::move(node.s));
    return out;
}

}  // namespace qfs
