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

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "qfs/errors.hpp"
#include "qfs/truncated.hpp"

namespace qfs {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Gaussian binomial [n k]_q by the product formula with exact division.
Int q_binomial(int n, int k, const Int& q);

/// Cached Gaussian binomials built by the Pascal recurrence
/// [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q.
class QBinomialTable {
public:
    QBinomialTable(Int q, int n_max);
    const Int& get(int n, int k) const;
    int n_max() const { return n_max_; }

private:
    Int q_;
    int n_max_;
    std::vector<std::vector<Int>> rows_;
};

/// Number of subspaces of an n-dimensional space over GF(q).
Int galois_number(int n, const Int& q);

/// Finite t-Pochhammer (a, t)_n = (1-a)(1-at)...(1-a t^{n-1}).
long double pochhammer_n(long double a, long double t, int n);

/// Infinite t-Pochhammer (a, t)_inf truncated at N factors, with a geometric
/// tail bound.  Requires |t| < 1.
TruncatedValue pochhammer_inf(long double a, long double t, int n_factors);

struct IdentityCheck {
    long double lhs = 0;
    long double rhs = 0;
    long double residual = 0;
    long double bound = 0;  // certified truncation + rounding bound
    bool pass = false;      // residual <= bound
};

/// Triple-product identity in the q0^{-1} variable:
///   sum_n q0^{-n(n+eps)}  ==  prod_i (1-q0^{-2i})(1+q0^{-(2i-1+eps)})(1+q0^{-(2i-1-eps)}).
IdentityCheck jacobi_check(uint32_t q0, int eps, int n_sum, int n_prod);

/// Rogers-Ramanujan-type identity underlying the split-unitary total mass,
/// with t = q0^{-1} and eps the parity of m:
///   sum_{k,i} t^{k^2+i^2-ki-(k-i)m+(m^2-eps^2)/4} / ((t,t)_k (t,t)_i)
///     ==  (-t,t)_inf (-t^{1+eps},t^2)_inf (-t^{1-eps},t^2)_inf.
/// The (m^2-eps^2)/4 exponent offset makes the double sum match the product
/// for every m; it drops out for |m| = eps.
IdentityCheck rr_identity_check(uint32_t q0, long long m, int k_max, int i_max, int n_prod);

}  // namespace qfs
