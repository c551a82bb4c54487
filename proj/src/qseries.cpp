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

#include "qfs/qseries.hpp"

#include <cmath>

namespace qfs {

Int q_binomial(int n, int k, const Int& q) {
    if (k < 0 || k > n || n < 0) raise(ErrorCode::OutOfRange, "q_binomial indices");
    if (k > n - k) k = n - k;
    Int num = 1, result = 1;
    // (q^n - 1)(q^{n-1} - 1)...(q^{n-k+1} - 1) / ((q^k - 1)...(q - 1)),
    // divided factor by factor; each partial quotient is integral.
    Int qpow_hi = boost::multiprecision::pow(q, static_cast<unsigned>(n));
    Int qpow_lo = 1;
    for (int j = 1; j <= k; ++j) {
        qpow_lo *= q;
        num *= qpow_hi - 1;
        qpow_hi /= q;
        Int den = qpow_lo - 1;
        // Keep intermediate values small: divide as soon as possible.
        Int g = boost::multiprecision::gcd(num, den);
        num /= g;
        den /= g;
        if (den != 1) raise(ErrorCode::InternalMismatch, "q_binomial division");
    }
    result = num;
    return result;
}

QBinomialTable::QBinomialTable(Int q, int n_max) : q_(std::move(q)), n_max_(n_max) {
    rows_.resize(n_max_ + 1);
    for (int n = 0; n <= n_max_; ++n) {
        rows_[n].assign(n + 1, 1);
        Int qk = 1;
        for (int k = 1; k < n; ++k) {
            qk *= q_;
            rows_[n][k] = rows_[n - 1][k - 1] + qk * rows_[n - 1][k];
        }
    }
}

const Int& QBinomialTable::get(int n, int k) const {
    if (n < 0 || n > n_max_ || k < 0 || k > n) raise(ErrorCode::OutOfRange, "q_binomial table indices");
    return rows_[n][k];
}

Int galois_number(int n, const Int& q) {
    Int total = 0;
    for (int k = 0; k <= n; ++k) total += q_binomial(n, k, q);
    return total;
}

long double pochhammer_n(long double a, long double t, int n) {
    long double prod = 1, at = a;
    for (int j = 0; j < n; ++j) {
        prod *= (1 - at);
        at *= t;
    }
    return prod;
}

TruncatedValue pochhammer_inf(long double a, long double t, int n_factors) {
    if (fabsl(t) >= 1) raise(ErrorCode::DivergentParameter, "infinite Pochhammer needs |t| < 1");
    long double prod = 1, at = a;
    for (int j = 0; j < n_factors; ++j) {
        prod *= (1 - at);
        at *= t;
    }
    // Remaining factors (1 - a t^j), j >= n_factors: log-tail bounded by
    // sum |a| t^j / (1 - |a t^N|) when |a t^N| < 1.
    long double head = fabsl(at);
    if (head >= 0.5L) raise(ErrorCode::DivergentParameter, "truncation point too early");
    long double sum_tail = head / (1 - fabsl(t));
    long double log_tail = sum_tail / (1 - head);
    long double tail = fabsl(prod) * expm1l(log_tail);
    tail += rounding_slop(prod, n_factors);
    return {prod, tail};
}

IdentityCheck jacobi_check(uint32_t q0, int eps, int n_sum, int n_prod) {
    if (q0 < 2 || (eps != 0 && eps != 1)) raise(ErrorCode::OutOfRange, "jacobi_check parameters");
    const long double t = 1.0L / q0;
    long double lhs = 0;
    for (long long n = -n_sum; n <= n_sum; ++n) {
        long double expo = static_cast<long double>(n) * (n + eps);
        lhs += powl(t, expo);
    }
    // Tail: exponents grow by at least 2 n_sum + 1 per step on either side.
    long double tail_pos = powl(t, static_cast<long double>(n_sum + 1) * (n_sum + 1 + eps));
    long double tail_neg = powl(t, static_cast<long double>(n_sum + 1) * (n_sum + 1 - eps));
    long double lhs_tail = (tail_pos + tail_neg) / (1 - powl(t, 2 * n_sum + 1));

    long double rhs = 1;
    for (int i = 1; i <= n_prod; ++i) {
        rhs *= (1 - powl(t, 2 * i)) * (1 + powl(t, 2 * i - 1 + eps)) * (1 + powl(t, 2 * i - 1 - eps));
    }
    long double gt = powl(t, 2 * (n_prod + 1) - 2);  // dominating factor magnitude
    long double log_tail = 3 * gt / (1 - t * t);
    long double rhs_tail = fabsl(rhs) * expm1l(log_tail);

    IdentityCheck c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = fabsl(lhs - rhs);
    c.bound = lhs_tail + rhs_tail + rounding_slop(lhs, 2 * n_sum + 3 * n_prod);
    c.pass = c.residual <= c.bound;
    return c;
}

IdentityCheck rr_identity_check(uint32_t q0, long long m, int k_max, int i_max, int n_prod) {
    if (q0 < 2) raise(ErrorCode::OutOfRange, "rr_identity_check needs q0 >= 2");
    const int eps = static_cast<int>(((m % 2) + 2) % 2);
    const long double t = 1.0L / q0;
    const long long shift = (m * m - eps) / 4;  // (m^2 - eps^2)/4, eps in {0,1}

    // Pochhammer prefix table (t,t)_k.
    const int kk = std::max(k_max, i_max);
    std::vector<long double> poch(kk + 1);
    poch[0] = 1;
    for (int j = 1; j <= kk; ++j) poch[j] = poch[j - 1] * (1 - powl(t, j));

    long double lhs = 0;
    for (int k = 0; k <= k_max; ++k) {
        for (int i = 0; i <= i_max; ++i) {
            long long expo = static_cast<long long>(k) * k + static_cast<long long>(i) * i -
                             static_cast<long long>(k) * i - (k - i) * m + shift;
            lhs += powl(t, static_cast<long double>(expo)) / (poch[k] * poch[i]);
        }
    }
    // Tail over max(k, i) = s > min(K, I): the exponent is bounded below by
    // f(s) = s^2/2 - s|m| + shift, and there are 2s+1 lattice points per shell.
    const long long am = m < 0 ? -m : m;
    TruncatedValue tt_inf = pochhammer_inf(t, t, n_prod);
    long double tt_lo = tt_inf.value - tt_inf.tail;
    long double lhs_tail = 0;
    {
        int s = std::min(k_max, i_max) + 1;
        for (;; ++s) {
            long double f = 0.5L * s * s - static_cast<long double>(am) * s + shift;
            long double term = (2.0L * s + 1) * powl(t, f) / (tt_lo * tt_lo);
            lhs_tail += term;
            if (term < 1e-45L && s > 2 * am + 4) {
                lhs_tail += term;  // geometric remainder cushion (ratio <= 1/2)
                break;
            }
            if (s > std::min(k_max, i_max) + 4000) raise(ErrorCode::InternalMismatch, "rr tail did not converge");
        }
    }

    TruncatedValue rhs = tv_mul(tv_mul(pochhammer_inf(-t, t, n_prod), pochhammer_inf(-powl(t, 1 + eps), t * t, n_prod)),
                                pochhammer_inf(-powl(t, 1 - eps), t * t, n_prod));

    IdentityCheck c;
    c.lhs = lhs;
    c.rhs = rhs.value;
    c.residual = fabsl(lhs - rhs.value);
    c.bound = lhs_tail + rhs.tail +
              rounding_slop(lhs, static_cast<long double>(k_max + 1) * (i_max + 1) + 3 * n_prod);
    c.pass = c.residual <= c.bound;
    return c;
}

}  // namespace qfs
