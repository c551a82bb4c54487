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

#include <doctest.h>

#include "qfs/dist.hpp"
#include "qfs/splitu.hpp"

using namespace qfs;

namespace {

long double rat_ld(const Rat& r) {
    return static_cast<long double>(boost::multiprecision::numerator(r)) /
           static_cast<long double>(boost::multiprecision::denominator(r));
}

struct DeltaCase { uint64_t q; Delta delta; };
const std::vector<DeltaCase> kDeltaGrid = {
    {2, Delta::Zero}, {2, Delta::One}, {3, Delta::Zero}, {3, Delta::One}, {4, Delta::Half}, {9, Delta::Half},
};

}  // namespace

TEST_CASE("alpha_finite examples") {
    CHECK(alpha_finite(2, 1, 0, Delta::Zero) == Rat(1, 2));
    CHECK(alpha_finite(2, 1, 1, Delta::Zero) == Rat(1, 2));
    CHECK(alpha_finite(2, 1, 0, Delta::One) == Rat(2, 3));
    CHECK(alpha_finite(2, 1, 1, Delta::One) == Rat(1, 3));
    CHECK(alpha_finite(2, 0, 3, Delta::Zero) == 0);  // no mass beyond n
    CHECK_THROWS_AS(delta_lambda_size(2, Delta::Half), Error);
}

TEST_CASE("finite masses sum to one exactly") {
    for (const auto& c : kDeltaGrid) {
        uint64_t lam = delta_lambda_size(c.q, c.delta);
        for (int n = 0; n <= 9; ++n) {
            Rat total = 0;
            for (int d = 0; d <= n; ++d) total += alpha_finite(c.q, n, d, lam);
            CHECK(total == 1);
        }
    }
}

TEST_CASE("Bernoulli convolution reproduces alpha") {
    CHECK(bernoulli_convolution(2, 1, 1).mass[1] == Rat(1, 2));
    CHECK(bernoulli_convolution(2, 1, 2).mass[1] == Rat(1, 3));
    auto conv = bernoulli_convolution(2, 2, 1);
    CHECK(conv.mass[0] == Rat(1, 3));
    CHECK(conv.mass[1] == Rat(1, 2));
    CHECK(conv.mass[2] == Rat(1, 6));
    for (const auto& c : kDeltaGrid) {
        uint64_t lam = delta_lambda_size(c.q, c.delta);
        for (int n = 0; n <= 7; ++n) {
            auto bc = bernoulli_convolution(c.q, n, lam);
            CHECK(bc.total() == 1);
            for (int d = 0; d <= n; ++d) CHECK(bc.mass[d] == alpha_finite(c.q, n, d, lam));
        }
    }
}

TEST_CASE("generating function identity") {
    // Total mass at z = 1, moments at z = q, parity at z = -1, plus q^2.
    for (const auto& c : kDeltaGrid) {
        uint64_t lam = delta_lambda_size(c.q, c.delta);
        for (int n = 0; n <= 12; ++n) {
            CHECK(generating_poly_eval(c.q, n, lam, Rat(1)) == 1);
            for (Rat z : {Rat(0), Rat(-1), Rat(c.q), Rat(c.q) * Rat(c.q)})
                CHECK_NOTHROW(generating_poly_eval(c.q, n, lam, z));
        }
    }
    // Finite-n mean of q^X evaluates in closed form: (2, ort, n=2) -> 2.
    CHECK(generating_poly_eval(2, 2, 1, Rat(2)) == 2);
}

TEST_CASE("limit distribution values and tails") {
    LimitDistribution d = limit_distribution(2, Delta::Zero, 8);
    // Frozen from the truncated-product oracle.
    CHECK(fabsl(d.mass[0].value - 0.2097112209L) < 1e-9L);
    CHECK(d.mass[0].tail < 1e-12L);
    // Ratio law D(1) = D(0) * q^{1-delta} / (q - 1) = 2 D(0).
    CHECK(fabsl(d.mass[1].value - 2 * d.mass[0].value) < 1e-15L);
    // The finite-n family converges: the independent exact route approaches
    // the truncated limit value.
    long double a30 = rat_ld(alpha_finite(2, 30, 0, Delta::Zero));
    CHECK(fabsl(a30 - d.mass[0].value) < 1e-6L);

    // Masses within bounds sum to ~1.
    for (const auto& c : kDeltaGrid) {
        int dmax = default_d_max(c.q, c.delta, 1e-12L);
        LimitDistribution ld = limit_distribution(c.q, c.delta, dmax);
        long double sum = 0, tails = 0;
        for (const auto& m : ld.mass) {
            sum += m.value;
            tails += m.tail;
        }
        CHECK(fabsl(sum - 1) <= tails + ld.beyond_dmax + 1e-14L);
        CHECK(fabsl(sum - 1) < 1e-10L);
    }
}

TEST_CASE("monotone convergence of finite-n to the limit") {
    for (Delta delta : {Delta::Zero, Delta::One}) {
        LimitDistribution lim = limit_distribution(2, delta, 12);
        long double prev = 1;
        for (int n : {6, 12, 18, 24, 30}) {
            long double worst = 0;
            for (int d = 0; d <= 12; ++d)
                worst = std::max(worst, fabsl(rat_ld(alpha_finite(2, n, d, delta)) - lim.mass[d].value));
            CHECK(worst <= prev + 1e-18L);
            prev = worst;
        }
        CHECK(prev < 1e-6L);
    }
}

TEST_CASE("moments of q^X") {
    CHECK(moment_q_power_closed(2, Delta::Zero, 1) == 3);
    CHECK(moment_q_power_closed(9, Delta::Half, 1) == 4);
    CHECK(moment_q_power_closed(2, Delta::One, 1) == 2);
    for (const auto& c : kDeltaGrid) {
        for (int m = 1; m <= 3; ++m) {
            Rat closed = moment_q_power_closed(c.q, c.delta, m);
            TruncatedValue series = moment_q_power_series(c.q, c.delta, m);
            CHECK(fabsl(series.value - rat_ld(closed)) <= series.tail + 1e-8L);
        }
    }
}

TEST_CASE("expectation series") {
    TruncatedValue e = expectation(2, Delta::Zero, 1e-9L);
    CHECK(fabsl(e.value - 1.264499L) < 1e-4L);
    CHECK(e.tail <= 1e-9L);
    // Cross-check against sum d * D(d).
    LimitDistribution lim = limit_distribution(2, Delta::Zero, 20);
    long double mean = 0;
    for (size_t d = 0; d < lim.mass.size(); ++d) mean += d * lim.mass[d].value;
    CHECK(fabsl(mean - e.value) < 1e-8L);
    // Large q, delta = 1: expectation collapses to zero like 1/q.
    CHECK(expectation(9, Delta::One, 1e-9L).value < 0.15L);
}

TEST_CASE("parity bias") {
    for (uint64_t q : {2, 3, 5, 9}) {
        TruncatedValue p = parity_even_prob(q, Delta::Zero);
        CHECK(p.value == 0.5L);  // exactly, the first factor of P vanishes
        CHECK(p.tail == 0.0L);
    }
    CHECK(parity_even_prob(2, Delta::One).value > 0.5L + parity_even_prob(2, Delta::One).tail);
    CHECK(parity_even_prob(9, Delta::Half).value > 0.5L);
}

TEST_CASE("mass-at-zero lower bound") {
    CHECK(prob_zero_bound(2, Delta::One) == 0);  // vacuous but valid
    CHECK(prob_zero_bound(9, Delta::One) == Rat(7, 8));
    CHECK(prob_zero_bound(4, Delta::Half) == Rat(1, 3));
    for (const auto& c : kDeltaGrid) {
        LimitDistribution lim = limit_distribution(c.q, c.delta, 4);
        CHECK(lim.mass[0].value - lim.mass[0].tail > rat_ld(prob_zero_bound(c.q, c.delta)));
    }
}

TEST_CASE("uniform corank distribution") {
    TruncatedValue u0 = uniform_dist(2, 0, 0);
    CHECK(fabsl(u0.value - 0.2887880951L) < 1e-9L);
    long double total = 0, tails = 0;
    for (int r = 0; r <= 20; ++r) {
        TruncatedValue u = uniform_dist(2, 0, r);
        total += u.value;
        tails += u.tail;
    }
    CHECK(fabsl(total - 1) < 1e-10L);
    // Frozen from the high-precision oracle.
    CHECK(fabsl(uniform_dist(2, 1, 5).value - 3.076622525e-9L) < 1e-17L);
}

TEST_CASE("type density") {
    TruncatedValue v0 = type_density(2, 0, 0);
    CHECK(fabsl(v0.value - 0.4697180241414827L) < 1e-12L);
    for (long long n = 1; n <= 6; ++n) CHECK(type_density(2, 0, n).value == type_density(2, 0, -n).value);
    for (uint32_t q0 : {2u, 3u}) {
        for (int eps : {0, 1}) {
            long double total = 0;
            for (long long n = -10; n <= 10; ++n) total += type_density(q0, eps, n).value;
            CHECK(fabsl(total - 1) < 1e-10L);
        }
    }
}

TEST_CASE("split-unitary limit distribution") {
    // Symmetry in the type is exact on the rational parts.
    for (uint32_t q0 : {2u, 3u})
        for (long long m = 0; m <= 4; ++m)
            for (int r = 0; r <= 8; ++r)
                CHECK(su_limit_dist_rational_part(q0, m, r) == su_limit_dist_rational_part(q0, -m, r));

    for (uint32_t q0 : {2u, 3u}) {
        for (long long m : {0LL, 1LL, 2LL, -3LL}) {
            long double mass = 0;
            for (int r = 0; r <= 30; ++r) mass += su_limit_dist(q0, m, r).value;
            CHECK(fabsl(mass - 1) < 1e-8L);
        }
    }

    // Finite split-unitary probabilities approach the limit along one parity.
    long double prev = 1;
    for (int n : {4, 8, 12, 16}) {
        long double worst = 0;
        for (int r = 0; r <= 4; ++r) {
            Rat fin = su_exact_intersection_prob(2, n, n / 2, r);
            worst = std::max(worst, fabsl(rat_ld(fin) - su_limit_dist(2, 0, r).value));
        }
        CHECK(worst < prev + 1e-15L);
        prev = worst;
    }
    CHECK(prev < 2e-3L);
}
