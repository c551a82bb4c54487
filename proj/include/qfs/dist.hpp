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

namespace qfs {

/// delta(Lambda) in {0, 1/2, 1}; |Lambda| = q^delta.
enum class Delta { Zero, Half, One };

const char* delta_name(Delta d);
/// |Lambda| as an exact integer; Half requires q to be a perfect square.
uint64_t delta_lambda_size(uint64_t q, Delta delta);

/// Finite-n distribution with exact rational masses.
struct RankDistribution {
    std::map<int, Rat> mass;

    Rat total() const;
};

/// Truncated limit distribution: masses with tail bounds for d <= d_max,
/// plus a rigorous bound on the total mass beyond d_max.
struct LimitDistribution {
    std::vector<TruncatedValue> mass;
    long double beyond_dmax = 0;
};

/// alpha_{q,n,d}: probability that a uniform maximal isotropic meets a fixed
/// one in dimension d, at half-dimension n.
Rat alpha_finite(uint64_t q, int n, int d, uint64_t lambda_size);
Rat alpha_finite(uint64_t q, int n, int d, Delta delta);

/// The same distribution as the convolution of independent Bernoulli masses
/// 1/(1 + |Lambda| q^{i-1}), i = 1..n.
RankDistribution bernoulli_convolution(uint64_t q, int n, uint64_t lambda_size);

/// Evaluates sum_d alpha_{q,n,d} z^d both as the explicit sum and as the
/// product prod_i (1 + q^{-i} z / L) / (1 + q^{-i} / L); raises
/// InternalMismatch if the two routes disagree.
Rat generating_poly_eval(uint64_t q, int n, uint64_t lambda_size, const Rat& z);

/// Limit masses D_q^delta(d) for d <= d_max with geometric tail bounds.
LimitDistribution limit_distribution(uint64_t q, Delta delta, int d_max);
/// Smallest d_max whose guaranteed remaining tail mass is below the target.
int default_d_max(uint64_t q, Delta delta, long double tail_target = 1e-10L);

/// E((q^X)^m) in closed form (exact rational) and from the truncated series.
Rat moment_q_power_closed(uint64_t q, Delta delta, int m);
TruncatedValue moment_q_power_series(uint64_t q, Delta delta, int m);

/// E(X) = sum_i 1/(1 + q^{delta + i}) with tail <= tol.
TruncatedValue expectation(uint64_t q, Delta delta, long double tol);

/// Prob(X even) = (1 + P(delta)) / 2 with P = prod (1 - q^{-delta-i})/(1 + q^{-delta-i});
/// exactly 1/2 iff delta = 0.
TruncatedValue parity_even_prob(uint64_t q, Delta delta);

/// Lower bound 1 - q^{1-delta} / (q - 1) on the mass at zero.
Rat prob_zero_bound(uint64_t q, Delta delta);

/// Corank-style limit U^t_{q0}(r).
TruncatedValue uniform_dist(uint32_t q0, int t, int r, int n_prod = 200);

/// Type-density V^eps_{q0}(n) over the integers.
TruncatedValue type_density(uint32_t q0, int eps, long long n_index, int n_prod = 200);

/// Split-unitary limit mass D^{SU,m}_{q0}(r).
TruncatedValue su_limit_dist(uint32_t q0, long long m, int r, int n_prod = 200);
/// The exact rational part of the same mass (everything except the two
/// infinite products), exposed for symmetry checks.
Rat su_limit_dist_rational_part(uint32_t q0, long long m, int r);

}  // namespace qfs
