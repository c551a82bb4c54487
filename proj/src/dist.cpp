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

#include "qfs/dist.hpp"

#include <cmath>

namespace qfs {

namespace {

long double rat_to_ld(const Rat& r) {
    return static_cast<long double>(boost::multiprecision::numerator(r)) /
           static_cast<long double>(boost::multiprecision::denominator(r));
}

// prod_{j=0}^{inf} (1 + 1/(L q^j))^{-1}, the mass at zero of the limit law.
TruncatedValue limit_alpha0(uint64_t q, uint64_t lambda, int n_factors) {
    long double prod = 1;
    for (int j = 0; j < n_factors; ++j) {
        long double x = 1.0L / (static_cast<long double>(lambda) * powl(static_cast<long double>(q), j));
        prod *= (1 + x);
    }
    // Log-tail of the remaining factors is geometric with ratio 1/q.
    long double head = 1.0L / (static_cast<long double>(lambda) * powl(static_cast<long double>(q), n_factors));
    long double log_tail = head * static_cast<long double>(q) / (q - 1.0L);
    long double tail = prod * expm1l(log_tail) + rounding_slop(prod, n_factors);
    return tv_recip({prod, tail});
}

}  // namespace

const char* delta_name(Delta d) {
    switch (d) {
        case Delta::Zero: return "0";
        case Delta::Half: return "1/2";
        case Delta::One: return "1";
    }
    return "?";
}

uint64_t delta_lambda_size(uint64_t q, Delta delta) {
    switch (delta) {
        case Delta::Zero: return 1;
        case Delta::One: return q;
        case Delta::Half: {
            uint64_t r = static_cast<uint64_t>(std::llround(std::sqrt(static_cast<double>(q))));
            if (r * r != q) raise(ErrorCode::InvalidDelta, "delta = 1/2 needs square q");
            return r;
        }
    }
    raise(ErrorCode::InvalidDelta, "unknown delta");
}

Rat RankDistribution::total() const {
    Rat t = 0;
    for (const auto& [d, m] : mass) t += m;
    return t;
}

Rat alpha_finite(uint64_t q, int n, int d, uint64_t lambda_size) {
    if (d < 0 || n < 0) raise(ErrorCode::OutOfRange, "alpha_finite indices");
    if (d > n) return 0;  // no mass beyond the half-dimension (the j = n factor vanishes)
    Rat result = 1;
    Int qpow = 1;
    for (int j = 0; j < n; ++j) {
        // (1 + q^{-j}/L)^{-1} = L q^j / (L q^j + 1).
        Int lq = Int(lambda_size) * qpow;
        result *= Rat(lq, lq + 1);
        qpow *= q;
    }
    Int qj = 1;
    for (int j = 1; j <= d; ++j) {
        qj *= q;
        result *= Rat(Int(q), Int(lambda_size) * (qj - 1));
    }
    // prod_{j=0}^{d-1} (1 - q^{j-n}).
    Int qn = boost::multiprecision::pow(Int(q), static_cast<unsigned>(n));
    Int qjn = 1;
    for (int j = 0; j < d; ++j) {
        result *= Rat(qn - qjn, qn);
        qjn *= q;
    }
    return result;
}

Rat alpha_finite(uint64_t q, int n, int d, Delta delta) { return alpha_finite(q, n, d, delta_lambda_size(q, delta)); }

RankDistribution bernoulli_convolution(uint64_t q, int n, uint64_t lambda_size) {
    RankDistribution dist;
    dist.mass[0] = 1;
    Int qpow = 1;  // q^{i-1}
    for (int i = 1; i <= n; ++i) {
        Rat p = Rat(1, Int(lambda_size) * qpow + 1);
        std::map<int, Rat> next;
        for (const auto& [d, m] : dist.mass) {
            next[d] += m * (1 - p);
            next[d + 1] += m * p;
        }
        dist.mass = std::move(next);
        qpow *= q;
    }
    return dist;
}

Rat generating_poly_eval(uint64_t q, int n, uint64_t lambda_size, const Rat& z) {
    if (n < 0) raise(ErrorCode::OutOfRange, "generating_poly_eval needs n >= 0");
    Rat lhs = 0, zd = 1;
    for (int d = 0; d <= n; ++d) {
        lhs += alpha_finite(q, n, d, lambda_size) * zd;
        zd *= z;
    }
    Rat rhs = 1;
    Int qpow = 1;
    for (int i = 0; i < n; ++i) {
        Int lq = Int(lambda_size) * qpow;  // L q^i
        rhs *= (Rat(lq) + z) / Rat(lq + 1);
        qpow *= q;
    }
    if (lhs != rhs) raise(ErrorCode::InternalMismatch, "generating function routes disagree");
    return lhs;
}

LimitDistribution limit_distribution(uint64_t q, Delta delta, int d_max) {
    if (d_max < 0) raise(ErrorCode::OutOfRange, "d_max must be >= 0");
    uint64_t lambda = delta_lambda_size(q, delta);
    TruncatedValue alpha0 = limit_alpha0(q, lambda, 220);
    LimitDistribution out;
    out.mass.reserve(d_max + 1);
    Rat factor = 1;
    Int qj = 1;
    for (int d = 0; d <= d_max; ++d) {
        if (d > 0) {
            qj *= q;
            factor *= Rat(Int(q), Int(lambda) * (qj - 1));
        }
        out.mass.push_back(tv_scale(alpha0, rat_to_ld(factor)));
    }
    // Masses beyond d_max: ratio r_{d+1}/r_d = q / (L (q^{d+1}-1)) keeps
    // shrinking, so a geometric envelope from the last mass bounds the rest.
    long double last = out.mass.back().value + out.mass.back().tail;
    long double ratio = static_cast<long double>(q) /
                        (static_cast<long double>(lambda) * (powl(static_cast<long double>(q), d_max + 1) - 1));
    if (ratio >= 1) raise(ErrorCode::OutOfRange, "d_max too small for a tail envelope");
    out.beyond_dmax = last * ratio / (1 - ratio);
    return out;
}

int default_d_max(uint64_t q, Delta delta, long double tail_target) {
    for (int d_max = 1; d_max < 256; ++d_max) {
        uint64_t lambda = delta_lambda_size(q, delta);
        long double ratio = static_cast<long double>(q) /
                            (static_cast<long double>(lambda) * (powl(static_cast<long double>(q), d_max + 1) - 1));
        if (ratio >= 1) continue;
        // Crude mass envelope: alpha0 <= 1, running product of ratios.
        long double mass = 1;
        Int qj = 1;
        for (int d = 1; d <= d_max; ++d) {
            qj *= q;
            mass *= static_cast<long double>(q) / (static_cast<long double>(lambda) * static_cast<long double>(qj - 1));
        }
        if (mass * ratio / (1 - ratio) < tail_target) return d_max;
    }
    raise(ErrorCode::OutOfRange, "no d_max satisfies the tail target");
}

Rat moment_q_power_closed(uint64_t q, Delta delta, int m) {
    if (m < 1) raise(ErrorCode::OutOfRange, "moment order must be >= 1");
    uint64_t lambda = delta_lambda_size(q, delta);
    // prod_{i=1}^m (1 + q^{-delta+i}) = prod (1 + q^i / L).
    Rat result = 1;
    Int qi = 1;
    for (int i = 1; i <= m; ++i) {
        qi *= q;
        result *= Rat(Int(lambda) + qi, Int(lambda));
    }
    return result;
}

TruncatedValue moment_q_power_series(uint64_t q, Delta delta, int m) {
    if (m < 1) raise(ErrorCode::OutOfRange, "moment order must be >= 1");
    uint64_t lambda = delta_lambda_size(q, delta);
    // sum_d q^{m d} D(d); terms decay super-geometrically once q^{d+1} > 2 q^m L.
    TruncatedValue alpha0 = limit_alpha0(q, lambda, 220);
    long double sum = 0;
    Rat factor = 1;
    Int qj = 1;
    long double qm = powl(static_cast<long double>(q), m);
    long double qmd = 1;
    int d = 0;
    long double term = alpha0.value;
    for (;;) {
        sum += term * qmd;
        ++d;
        qj *= q;
        factor *= Rat(Int(q), Int(lambda) * (qj - 1));
        qmd *= qm;
        term = alpha0.value * rat_to_ld(factor);
        long double ratio = qm * static_cast<long double>(q) /
                            (static_cast<long double>(lambda) * (powl(static_cast<long double>(q), d + 1) - 1));
        if (term * qmd < 1e-30L && ratio < 0.5L) {
            // Remaining terms are bounded by a ratio < 1/2 geometric series.
            long double tail_terms = 2 * term * qmd;
            long double tail = tail_terms + (alpha0.tail / alpha0.value) * sum + rounding_slop(sum, d);
            return {sum, tail};
        }
        if (d > 4000) raise(ErrorCode::InternalMismatch, "moment series did not converge");
    }
}

TruncatedValue expectation(uint64_t q, Delta delta, long double tol) {
    if (tol <= 0) raise(ErrorCode::OutOfRange, "tolerance must be positive");
    uint64_t lambda = delta_lambda_size(q, delta);
    // sum_i 1/(1 + q^{delta+i}) = sum_i 1/(1 + L q^i).
    long double sum = 0;
    int i = 0;
    for (;;) {
        long double term = 1.0L / (1 + static_cast<long double>(lambda) * powl(static_cast<long double>(q), i));
        sum += term;
        ++i;
        long double tail = 1.0L / (static_cast<long double>(lambda) * powl(static_cast<long double>(q), i)) *
                           static_cast<long double>(q) / (q - 1.0L);
        if (tail < tol) return {sum, tail + rounding_slop(sum, i)};
        if (i > 100000) raise(ErrorCode::InternalMismatch, "expectation series did not converge");
    }
}

TruncatedValue parity_even_prob(uint64_t q, Delta delta) {
    uint64_t lambda = delta_lambda_size(q, delta);
    if (lambda == 1) return TruncatedValue::exact(0.5L);  // first factor of P vanishes
    // P = prod_{i>=0} (1 - 1/(L q^i)) / (1 + 1/(L q^i)).
    long double prod = 1;
    const int n_factors = 220;
    for (int i = 0; i < n_factors; ++i) {
        long double x = 1.0L / (static_cast<long double>(lambda) * powl(static_cast<long double>(q), i));
        prod *= (1 - x) / (1 + x);
    }
    // Each factor is exp(theta_i) with |theta_i| <= 2x/(1-x) <= 4x here.
    long double head = 1.0L / (static_cast<long double>(lambda) * powl(static_cast<long double>(q), n_factors));
    long double log_tail = 4 * head * static_cast<long double>(q) / (q - 1.0L);
    long double tail = fabsl(prod) * expm1l(log_tail) + rounding_slop(prod, n_factors);
    return {(1 + prod) / 2, tail / 2};
}

Rat prob_zero_bound(uint64_t q, Delta delta) {
    uint64_t lambda = delta_lambda_size(q, delta);
    // 1 - q^{1-delta}/(q-1) = 1 - (q/L)/(q-1).
    return 1 - Rat(Int(q), Int(lambda) * (Int(q) - 1));
}

TruncatedValue uniform_dist(uint32_t q0, int t, int r, int n_prod) {
    if (t < 0 || r < 0) raise(ErrorCode::OutOfRange, "uniform_dist indices");
    const long double tq = 1.0L / q0;
    // q0^{-r(t+r)} * prod_{j=r+1}^inf (1 - q0^{-j}) / prod_{j=1}^{t+r} (1 - q0^{-j}).
    TruncatedValue top = pochhammer_inf(tq, tq, n_prod);  // (t,t)_inf = prod_{j>=1}(1-q0^{-j})
    long double partial_r = 1, partial_tr = 1;
    for (int j = 1; j <= r; ++j) partial_r *= (1 - powl(tq, j));
    for (int j = 1; j <= t + r; ++j) partial_tr *= (1 - powl(tq, j));
    TruncatedValue tail_prod = tv_scale(top, 1.0L / partial_r);  // prod_{j=r+1}^inf
    long double prefactor = powl(tq, static_cast<long double>(r) * (t + r)) / partial_tr;
    return tv_scale(tail_prod, prefactor);
}

TruncatedValue type_density(uint32_t q0, int eps, long long n_index, int n_prod) {
    if (eps != 0 && eps != 1) raise(ErrorCode::OutOfRange, "eps must be 0 or 1");
    const long double t = 1.0L / q0;
    TruncatedValue denom = tv_mul(
        tv_mul(pochhammer_inf(t * t, t * t, n_prod), pochhammer_inf(-powl(t, 1 + eps), t * t, n_prod)),
        pochhammer_inf(-powl(t, 1 - eps), t * t, n_prod));
    TruncatedValue inv = tv_recip(denom);
    long double pre = powl(t, static_cast<long double>(n_index) * (n_index + eps));
    return tv_scale(inv, pre);
}

Rat su_limit_dist_rational_part(uint32_t q0, long long m, int r) {
    if (r < 0) raise(ErrorCode::OutOfRange, "r must be >= 0");
    const int eps = static_cast<int>(((m % 2) + 2) % 2);
    const long long mu = (m + eps) / 2;
    // q0^{-A} sum_k q0^{B_k} [r k]_{q0} with
    // A = (r+mu)(r+mu+eps), B_k = 2(k+eps)(r-k) + (2k+eps)(m+eps).
    const long long a_expo = (r + mu) * (r + mu + eps);
    Rat sum = 0;
    for (int k = 0; k <= r; ++k) {
        long long b = 2LL * (k + eps) * (r - k) + (2LL * k + eps) * (m + eps);
        long long expo = b - a_expo;
        Rat power = expo >= 0 ? Rat(boost::multiprecision::pow(Int(q0), static_cast<unsigned>(expo)))
                              : Rat(1, boost::multiprecision::pow(Int(q0), static_cast<unsigned>(-expo)));
        sum += power * Rat(q_binomial(r, k, Int(q0)));
    }
    return sum;
}

TruncatedValue su_limit_dist(uint32_t q0, long long m, int r, int n_prod) {
    const int eps = static_cast<int>(((m % 2) + 2) % 2);
    const long double t = 1.0L / q0;
    Rat rational = su_limit_dist_rational_part(q0, m, r);
    // prod_{j=r+1}^inf (1 - q0^{-j}).
    TruncatedValue ttinf = pochhammer_inf(t, t, n_prod);
    long double partial_r = 1;
    for (int j = 1; j <= r; ++j) partial_r *= (1 - powl(t, j));
    TruncatedValue tail_prod = tv_scale(ttinf, 1.0L / partial_r);
    TruncatedValue v0 = type_density(q0, eps, 0, n_prod);
    return tv_scale(tv_mul(tail_prod, v0), rat_to_ld(rational));
}

}  // namespace qfs
