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

#pragma once

#include <Eigen/Core>

#include <vector>

#include "qfs/gf.hpp"

namespace Eigen {

template <>
struct NumTraits<qfs::Fq> {
    typedef qfs::Fq Real;
    typedef qfs::Fq NonInteger;
    typedef qfs::Fq Literal;
    typedef qfs::Fq Nested;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4,
    };
    static inline qfs::Fq epsilon() { return qfs::Fq(0); }
    static inline qfs::Fq dummy_precision() { return qfs::Fq(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qfs {

using Mat = Eigen::Matrix<Fq, Eigen::Dynamic, Eigen::Dynamic>;
using RowVec = Eigen::Matrix<Fq, 1, Eigen::Dynamic>;

/// Matrix with every entry set to the zero of f.
Mat zeros(const Field& f, Eigen::Index rows, Eigen::Index cols);
Mat identity(const Field& f, Eigen::Index n);
RowVec zero_vec(const Field& f, Eigen::Index n);

/// Entrywise involution.
Mat apply_inv(const Mat& m, const Involution& sigma);
RowVec apply_inv(const RowVec& v, const Involution& sigma);

/// Reduced row echelon form with zero rows dropped; the row space is
/// preserved and the result is canonical for it.
Mat rref(const Mat& m);
/// Variant also reporting the pivot columns.
Mat rref(const Mat& m, std::vector<Eigen::Index>& pivots);
Eigen::Index rank(const Mat& m);
/// Inverse of a square invertible matrix (Gauss-Jordan).
Mat inverse(const Mat& m, const Field& f);

/// Subspace of a row-vector space, held as a canonical RREF basis
/// (rows = dimension).  Two equal subspaces compare bit-identical.
struct Subspace {
    Eigen::Index ambient = 0;
    Mat basis;  // RREF, no zero rows

    Eigen::Index dim() const { return basis.rows(); }
    bool contains(const RowVec& v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in the RREF basis; v must lie in the subspace.
    RowVec coordinates(const RowVec& v) const;
    bool operator==(const Subspace& o) const;

    /// All q^dim member vectors, in span order (test-sized spaces only).
    std::vector<RowVec> enumerate_vectors(const Field& f) const;
};

/// Walks all vectors of a row span lazily in base-q counter order, without
/// materializing them; advance() returns false after the last vector.
class SpanWalker {
public:
    SpanWalker(const Field& f, const Mat& basis_rows, Eigen::Index ambient);

    const RowVec& current() const { return v_; }
    bool advance();
    void reset();
    uint64_t count() const { return count_; }

private:
    const Field* f_;
    Eigen::Index dim_;
    std::vector<std::vector<RowVec>> scaled_;
    std::vector<uint32_t> digits_;
    RowVec v_;
    uint64_t count_;
};

/// Builds the subspace spanned by the rows of m (canonicalizes).
Subspace span(Eigen::Index ambient, const Mat& m);
Subspace zero_subspace(const Field& f, Eigen::Index ambient);
Subspace full_space(const Field& f, Eigen::Index ambient);

Subspace sum(const Subspace& a, const Subspace& b);
/// Intersection via the Zassenhaus stacked-basis algorithm.
Subspace intersect(const Subspace& a, const Subspace& b);
/// Right kernel {x : m x^T = 0} as a subspace of the column-count space.
Subspace right_kernel(const Mat& m, const Field& f);

/// Quotient of the ambient row space by x, with a chosen linear section.
/// project() maps ambient vectors to quotient coordinates; section() maps
/// them back with project(section(u)) == u and kernel(project) == x.
struct Quotient {
    Subspace x;
    Eigen::Index dim = 0;
    std::vector<Eigen::Index> free_cols;  // non-pivot columns of x

    RowVec project(const RowVec& v) const;
    RowVec section(const RowVec& u) const;
    Mat project_rows(const Mat& rows) const;
    Mat section_rows(const Mat& rows) const;
};

Quotient quotient(Eigen::Index ambient_dim, const Subspace& x);

/// All subspaces of GF(q)^n, canonical bases (test-sized n, q only).
std::vector<Subspace> all_subspaces(const Field& f, Eigen::Index n);
/// All subspaces of a fixed dimension.
std::vector<Subspace> all_subspaces_of_dim(const Field& f, Eigen::Index n, Eigen::Index d);

}  // namespace qfs
