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

#include <map>

#include "qfs/qseries.hpp"
#include "qfs/quadspace.hpp"
#include "qfs/rng.hpp"

namespace qfs {

/// Complete list of maximal isotropic subspaces, canonically ordered
/// (lexicographic on RREF basis entries).
struct IsotropicSet {
    Eigen::Index ambient = 0;
    std::vector<Subspace> members;

    size_t size() const { return members.size(); }
};

/// Depth-first flag extension with per-level dedup; the candidate scan walks
/// the isotropic vectors of the induced quotient space incrementally.
IsotropicSet enumerate_maximal_isotropic(const QuadraticSpace& v, uint64_t cap = 1000000);

/// |I_V| = prod_{j=0}^{n-1} (|Lambda| q^j + 1).
Int count_formula(uint64_t q, int n, uint64_t lambda_size);
Int count_formula(uint64_t q, int n, SpaceType type);

/// Fiber size of the projection to I_{X^perp/X}:
/// prod_{i=1}^{dim X} (|Lambda| q^{n-i} + 1).
Int fiber_size_formula(uint64_t q, int n, int dim_x, uint64_t lambda_size);
Int fiber_size_formula(uint64_t q, int n, int dim_x, SpaceType type);

/// Uniform draw from I_V by isotropic flag growth: rejection-sample a
/// nonzero isotropic vector, quotient by its span, recurse, then lift the
/// flag back through the stored sections.  GF(2) spaces with dim <= 64 run
/// on a bit-packed fast path.
Subspace sample_uniform(const QuadraticSpace& v, Rng& rng, int trial_cap = 10000);

/// Draws `samples` uniform members and tallies dim(Z cap W); equivalent to
/// repeated sample_uniform + intersect but keeps the GF(2) path packed.
std::map<int, uint64_t> intersection_sim(const QuadraticSpace& v, const Subspace& w, uint64_t samples,
                                         Rng& rng, int trial_cap = 10000);

/// Exact distribution of dim(Z cap W) over all Z in I_V.
std::map<int, Rat> intersection_distribution_exact(const QuadraticSpace& v, const Subspace& w,
                                                   uint64_t cap = 1000000);

/// Visits every nonzero isotropic vector of the space, one canonical (first
/// nonzero coordinate = 1) representative per projective line, with O(dim)
/// incremental work per ambient vector.
void for_each_isotropic_line_rep(const QuadraticSpace& v, const std::function<void(const RowVec&)>& fn);

}  // namespace qfs
