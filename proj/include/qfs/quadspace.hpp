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

#include <optional>

#include "qfs/linalg.hpp"

namespace qfs {

enum class SpaceType { Orthogonal, Symplectic, Unitary };

const char* space_type_name(SpaceType t);

/// Form parameter in the sense of Bak: lambda = +-1 together with the choice
/// of the minimal or maximal admissible subgroup
///   Lambda_min = { a - lambda sigma(a) },  Lambda_max = { a : a = -lambda sigma(a) }.
struct FormParameter {
    int lambda = 1;  // +1 or -1
    enum class Choice { Min, Max } choice = Choice::Min;

    static FormParameter orthogonal() { return {1, Choice::Min}; }
    static FormParameter symplectic() { return {-1, Choice::Max}; }
    static FormParameter unitary() { return {1, Choice::Max}; }
    static FormParameter for_type(SpaceType t);
};

/// Form parameter realized against a concrete (field, involution) pair:
/// the subgroup Lambda itself, its size q^delta, and canonical coset
/// representatives for k / Lambda.
class RealizedParam {
public:
    RealizedParam(FieldPtr field, Involution sigma, FormParameter param);

    const Field& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }
    const Involution& sigma() const { return sigma_; }
    const FormParameter& param() const { return param_; }
    SpaceType type() const { return type_; }

    uint32_t lambda_size() const { return size_; }
    /// delta(Lambda) in half-units: 0, 1, 2 for delta = 0, 1/2, 1.
    int delta_half_units() const { return delta2_; }
    bool in_lambda(Fq a) const { return member_[a.value_in(field_.get())]; }
    /// Canonical representative of a + Lambda in the fixed complement.
    Fq coset_rep(Fq a) const { return Fq(field_.get(), rep_[a.value_in(field_.get())]); }
    Fq lambda_elem() const { return param_.lambda == 1 ? field_->one() : -field_->one(); }

private:
    FieldPtr field_;
    Involution sigma_;
    FormParameter param_;
    SpaceType type_;
    std::vector<bool> member_;
    std::vector<uint32_t> rep_;
    uint32_t size_ = 0;
    int delta2_ = 0;
};

/// Nondegenerate (lambda, Lambda)-quadratic space over a finite field:
/// the Gram matrix S of a defining sesquilinear form s with the convention
/// s(x, y) = x S sigma(y)^T on row vectors, the even hermitian Gram
/// H = S + lambda sigma(S)^T, and q(v) = s(v, v) mod Lambda.
class QuadraticSpace {
public:
    QuadraticSpace(FieldPtr field, Involution sigma, FormParameter param, Mat S);
    /// Shares an already-realized parameter (quotient construction path).
    QuadraticSpace(std::shared_ptr<const RealizedParam> realized, Mat S);

    const Field& field() const { return realized_->field(); }
    FieldPtr field_ptr() const { return realized_->field_ptr(); }
    const Involution& sigma() const { return realized_->sigma(); }
    const RealizedParam& realized() const { return *realized_; }
    std::shared_ptr<const RealizedParam> realized_ptr() const { return realized_; }
    SpaceType type() const { return realized_->type(); }
    Eigen::Index dim() const { return S_.rows(); }
    const Mat& gram_s() const { return S_; }
    const Mat& gram_h() const { return H_; }

    Fq s_form(const RowVec& x, const RowVec& y) const;
    Fq h_form(const RowVec& x, const RowVec& y) const;
    /// q(v) = s(v,v) mod Lambda, as the canonical coset representative.
    Fq eval_q(const RowVec& v) const;
    bool is_isotropic_vector(const RowVec& v) const { return eval_q(v).is_zero(); }

    Subspace orthogonal_complement(const Subspace& x) const;
    /// q vanishes on the subspace and X is contained in its own complement;
    /// decided on a basis plus pairwise sums via the polar identity.
    bool is_isotropic(const Subspace& x) const;
    bool is_maximal_isotropic(const Subspace& x) const;

    /// Zero-based standard hyperbolic space of half-dimension n.
    static QuadraticSpace hyperbolic(FieldPtr field, Involution sigma, Eigen::Index n, FormParameter param);
    /// The first-n-coordinates maximal isotropic of a hyperbolic space.
    Subspace standard_lagrangian() const;

    /// Two Gram matrices define the same class [s] iff their difference D
    /// satisfies D = -lambda sigma(D)^T with diagonal inside Lambda.
    bool same_gram_class(const Mat& s1, const Mat& s2) const;

private:
    std::shared_ptr<const RealizedParam> realized_;
    Mat S_;
    Mat H_;
};

/// Quotient quadratic space X^perp / X for X isotropic, together with the
/// projection and the chosen linear section back into the ambient space.
struct InducedSpace {
    QuadraticSpace space;
    Subspace x;
    Subspace xperp;
    Quotient coord_quot;   // quotient of X^perp-coordinates by X
    Mat section_ambient;   // rows: quotient basis vectors lifted to X^perp

    /// Projects v (must lie in X^perp) to quotient coordinates.
    RowVec project(const RowVec& v) const;
    /// Lifts quotient coordinates through the section into the ambient space.
    RowVec lift(const RowVec& u) const;
    Subspace project_subspace(const Subspace& s) const;
};

InducedSpace quotient_space(const QuadraticSpace& v, const Subspace& x);

/// Image of a maximal isotropic W under W -> ((W cap X^perp) + X) / X.
Subspace project_maximal_isotropic(const QuadraticSpace& v, const InducedSpace& quot, const Subspace& w);

/// Change of basis onto a standard hyperbolic frame: returns T whose first
/// dim X rows span X, such that T S sigma(T)^T lies in the hyperbolic Gram
/// class.  Requires X maximal isotropic with dim V = 2 dim X.
Mat hyperbolic_basis(const QuadraticSpace& v, const Subspace& x);

/// Deterministic metabolicity test by hyperbolic peeling.
bool is_metabolic(const QuadraticSpace& v);

/// Standard space for CLI-style parameters: hyperbolic of half-dimension n
/// over GF(q) with the involution and form parameter implied by the type.
QuadraticSpace standard_space(uint32_t q, Eigen::Index n, SpaceType type);

/// |Lambda| for a standard space over GF(q) of the given type (1, sqrt q, q).
uint64_t lambda_size_for(uint64_t q, SpaceType type);

}  // namespace qfs
