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

#include "qfs/qseries.hpp"
#include "qfs/linalg.hpp"

namespace qfs {

/// Split unitary space over k0 + k0: the hyperbolic module on V0 = k0^n with
/// the swap involution.  Elements are pairs (left, right) of k0^n vectors;
/// the hermitian form is h((a,b),(c,d)) = (a . d, b . c), which identifies the
/// right component with the dual of V0 under the coordinate dot pairing.
/// The form parameter is forced: Lambda = k0 (1, -1), so a submodule is
/// maximal isotropic iff it equals its own orthogonal complement.
struct SplitUnitarySpace {
    FieldPtr k0;
    Eigen::Index n = 0;
};

/// Submodule of a split unitary space, stored as the pair of its component
/// k0-subspaces (alpha part in V0, sigma(alpha) part in V0*).
struct SplitSubmodule {
    Subspace left;   // subspace of V0
    Subspace right;  // subspace of V0*

    Eigen::Index k0_dim() const { return left.dim() + right.dim(); }
    bool operator==(const SplitSubmodule& o) const { return left == o.left && right == o.right; }
};

/// Maximal isotropic submodule W + W°, W° the annihilator of W in V0*.
struct SUMaximalIsotropic {
    Subspace w;     // base subspace of V0
    Subspace wann;  // its annihilator
    Eigen::Index n = 0;

    /// Type m = 2 dim W - n.
    long long type() const { return 2 * static_cast<long long>(w.dim()) - n; }
    SplitSubmodule as_submodule() const { return {w, wann}; }
};

/// Annihilator of a subspace under the coordinate dot pairing.
Subspace annihilator(const SplitUnitarySpace& space, const Subspace& w);

SUMaximalIsotropic su_from_base(const SplitUnitarySpace& space, const Subspace& w);

/// Orthogonal complement of a submodule under the hermitian form.
SplitSubmodule su_orthogonal_complement(const SplitUnitarySpace& space, const SplitSubmodule& m);
bool su_is_maximal_isotropic(const SplitUnitarySpace& space, const SplitSubmodule& m);

/// dim_{k0} of the intersection of two maximal isotropic submodules.
Eigen::Index su_intersection_dim(const SUMaximalIsotropic& a, const SUMaximalIsotropic& b);

/// Exact probability that dim_{k0}(W~ cap Z~) = r for Z~ uniform over all
/// maximal isotropics, given the fixed W~; a Gaussian-binomial sum over the
/// base dimension d of Z with d - dim W = n - r (mod 2), divided by the
/// Galois number.
Rat su_exact_intersection_prob(const SplitUnitarySpace& space, const SUMaximalIsotropic& fixed_w, int r);
/// Closed form by parameters only (n = base dimension, d_w = dim W).
Rat su_exact_intersection_prob(uint64_t q0, int n, int d_w, int r);

/// Exact probability that dim(W cap Z) = r for fixed W of dimension dim_w
/// and Z uniform over the dim_z-subspaces of an n-space over GF(q0).
Rat subspace_intersection_prob(uint64_t q0, int n, int dim_w, int dim_z, int r);

/// Flag-growth enumeration of the maximal isotropic submodules, driven by
/// pair-vector extension only (no annihilator shortcut); used as the generic
/// cross-check against the W + W° description.
std::vector<SUMaximalIsotropic> su_enumerate_generic(const SplitUnitarySpace& space);

/// All maximal isotropics via su_from_base over all subspaces of V0.
std::vector<SUMaximalIsotropic> su_enumerate_from_bases(const SplitUnitarySpace& space);

}  // namespace qfs
