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

#include "qfs/quadspace.hpp"

namespace qfs {

/// The k-linear structure on the GF(p)-expansion of V = k^d.  The fixed
/// GF(p)-basis is x^t e_i at flat index i*e + t, with x the class of the
/// generator in k = GF(p)[x]/(modulus).
struct KStructure {
    FieldPtr k;
    Involution sigma;
    Eigen::Index d = 0;  // k-dimension
    FieldPtr fp;         // prime field GF(p)
    Mat mult_x;          // row-vector action of v -> x v on GF(p)^{d e}
    Mat mult_sigma_x;    // row-vector action of v -> sigma(x) v

    Eigen::Index flat_dim() const { return d * k->e(); }
};

KStructure make_kstructure(FieldPtr k, Involution sigma, Eigen::Index d);

RowVec expand_vector(const KStructure& ks, const RowVec& v_over_k);
RowVec contract_vector(const KStructure& ks, const RowVec& v_over_p);
Subspace expand_subspace(const KStructure& ks, const Subspace& x_over_k);
/// Closed under multiplication by x.
bool is_k_stable(const KStructure& ks, const Subspace& s_over_p);

/// GF(p)-valued form whose Gram hp satisfies hp(a u, w) = hp(u, sigma(a) w).
struct AdjointForm {
    KStructure ks;
    Mat hp;  // (d e) x (d e) over GF(p)
};

/// Quadratic refinement of an adjoint form in the Gram-class encoding: the
/// diagonal of sp carries q on the flat basis and sp + sp^T the polar form.
struct AdjointQuadraticForm {
    KStructure ks;
    Mat sp;
};

/// Raises NotAdjoint unless the Gram commutes with the k-action:
/// M_x hp = hp M_{sigma(x)}^T.
void validate_adjoint(const KStructure& ks, const Mat& hp);

/// The unique sigma-sesquilinear k-Gram H' with entrywise composed trace
/// equal to hp, via the trace-dual basis: H'(e_i, e_j) = sum_t a_t* hp(x^t e_i, e_j).
Mat lift_bilinear(const AdjointForm& f);

/// Kernel dimension of the homogeneous trace system for a single k-entry;
/// zero certifies uniqueness of the bilinear lift.
int lift_uniqueness_kernel_dim(const KStructure& ks);

struct QuadraticLiftResult {
    Mat s_k;            // k-Gram of s' with q'(v) = s'(v,v)
    int ambiguity_dim;  // GF(2)-dimension of the solution space of the solve
};

/// Characteristic-2 quadratic lifting for sigma = 1 on k: solves for an
/// adjoint GF(2)-bilinear s with matching diagonal and polarization, then
/// lifts it to the k-Gram.  Raises NoSolution if the linear system is
/// inconsistent (a precondition violation).
QuadraticLiftResult lift_quadratic_char2(const AdjointQuadraticForm& f);

/// GF(p)-quadratic space obtained by composing the trace with the k-space
/// structure (same underlying set, flat coordinates).
QuadraticSpace trace_down(const QuadraticSpace& vk, const KStructure& ks);

/// Both maximal-isotropy predicates for a k-subspace: over GF(p) in vp and
/// over k in vk.  Verifies the trace compatibility Tr q' = q on every vector
/// first and raises NotTraceCompatible when it fails.
std::pair<bool, bool> check_mi_correspondence(const QuadraticSpace& vp, const KStructure& ks,
                                              const QuadraticSpace& vk, const Subspace& x_over_k);

}  // namespace qfs
