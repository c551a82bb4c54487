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

#include "qfs/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qfs {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::ExponentZero: return "ExponentZero";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::NotASubfield: return "NotASubfield";
        case ErrorCode::InvolutionTrivial: return "InvolutionTrivial";
        case ErrorCode::MixedRings: return "MixedRings";
        case ErrorCode::AmbientMismatch: return "AmbientMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::NotIsotropic: return "NotIsotropic";
        case ErrorCode::NotMaximalIsotropic: return "NotMaximalIsotropic";
        case ErrorCode::InvalidParam: return "InvalidParam";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotMetabolic: return "NotMetabolic";
        case ErrorCode::SamplingCapExceeded: return "SamplingCapExceeded";
        case ErrorCode::InvalidDelta: return "InvalidDelta";
        case ErrorCode::DivergentParameter: return "DivergentParameter";
        case ErrorCode::InternalMismatch: return "InternalMismatch";
        case ErrorCode::NotAdjoint: return "NotAdjoint";
        case ErrorCode::NoSolution: return "NoSolution";
        case ErrorCode::NotTraceCompatible: return "NotTraceCompatible";
    }
    return "Unknown";
}

namespace {

constexpr uint32_t kMaxQ = 1u << 16;

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Conway polynomials for small (p, e), constant term first.
const std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> kConwayTable = {
    {{2, 1}, {1, 1}},
    {{2, 2}, {1, 1, 1}},
    {{2, 3}, {1, 1, 0, 1}},
    {{2, 4}, {1, 1, 0, 0, 1}},
    {{2, 5}, {1, 0, 1, 0, 0, 1}},
    {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
    {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
    {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {{3, 1}, {1, 1}},
    {{3, 2}, {2, 2, 1}},
    {{3, 3}, {1, 2, 0, 1}},
    {{3, 4}, {2, 0, 0, 2, 1}},
    {{5, 1}, {3, 1}},
    {{5, 2}, {2, 4, 1}},
    {{7, 1}, {4, 1}},
    {{7, 2}, {3, 6, 1}},
};

using Poly = std::vector<uint32_t>;  // constant term first; may carry leading zeros

int poly_deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// Remainder of a by b over GF(p), b nonzero.
Poly poly_mod(Poly a, const Poly& b, uint32_t p) {
    int db = poly_deg(b);
    uint32_t lead_inv = 1;
    for (uint32_t t = 1; t < p; ++t)
        if (t * b[db] % p == 1) { lead_inv = t; break; }
    for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
        uint32_t c = a[da] * lead_inv % p;
        for (int i = 0; i <= db; ++i) {
            uint32_t s = c * b[i] % p;
            a[da - db + i] = (a[da - db + i] + p - s) % p;
        }
    }
    return a;
}

bool poly_is_zero(const Poly& f) { return poly_deg(f) < 0; }

// Irreducibility over GF(p) by trial division with every monic polynomial of
// degree <= deg(f)/2; fine at the q <= 2^16 machine bound.
bool poly_irreducible(const Poly& f, uint32_t p) {
    int df = poly_deg(f);
    if (df < 1) return false;
    for (int d = 1; 2 * d <= df; ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (uint64_t m = 0; m < count; ++m) {
            Poly g(d + 1, 0);
            g[d] = 1;
            uint64_t t = m;
            for (int i = 0; i < d; ++i) { g[i] = static_cast<uint32_t>(t % p); t /= p; }
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

std::vector<uint32_t> deterministic_modulus(uint32_t p, uint32_t e) {
    auto it = kConwayTable.find({p, e});
    if (it != kConwayTable.end()) return it->second;
    // Lexicographically first monic irreducible, comparing the coefficient
    // tuple (c_0, c_1, ..., c_{e-1}).
    uint64_t count = 1;
    for (uint32_t i = 0; i < e; ++i) count *= p;
    for (uint64_t m = 0; m < count; ++m) {
        Poly f(e + 1, 0);
        f[e] = 1;
        uint64_t t = m;
        for (uint32_t i = 0; i < e; ++i) {
            f[e - 1 - i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        if (poly_irreducible(f, p)) return f;
    }
    raise(ErrorCode::InternalMismatch, "no irreducible polynomial found");
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> fs;
    for (uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

Field::Field(uint32_t p, uint32_t e, std::vector<uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < e_; ++i) q *= p_;
    q_ = static_cast<uint32_t>(q);
    xor_add_ = (p_ == 2);
    build_tables();
}

FieldPtr Field::make(uint32_t p, uint32_t e) {
    if (!is_prime(p)) raise(ErrorCode::NotPrime, "p = " + std::to_string(p));
    if (e == 0) raise(ErrorCode::ExponentZero, "e must be >= 1");
    {
        uint64_t q = 1;
        for (uint32_t i = 0; i < e; ++i) {
            q *= p;
            if (q > kMaxQ) raise(ErrorCode::FieldTooLarge, "p^e exceeds 2^16");
        }
    }
    static std::mutex mu;
    static std::map<std::pair<uint32_t, uint32_t>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldPtr f(new Field(p, e, deterministic_modulus(p, e)));
    cache.emplace(key, f);
    return f;
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
    if (xor_add_) return a ^ b;
    uint32_t r = 0, mult = 1;
    while (a != 0 || b != 0) {
        uint32_t da = a % p_, db = b % p_;
        r += (da + db) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

uint32_t Field::neg(uint32_t a) const {
    if (xor_add_) return a;
    uint32_t r = 0, mult = 1;
    while (a != 0) {
        uint32_t da = a % p_;
        r += (da == 0 ? 0 : p_ - da) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) raise(ErrorCode::OutOfRange, "inverse of zero");
    return exp_[q_ - 1 - log_[a]];
}

uint32_t Field::pow(uint32_t a, uint64_t n) const {
    if (a == 0) return n == 0 ? 1u : 0u;
    uint64_t ln = log_[a] * (n % (q_ - 1)) % (q_ - 1);
    return exp_[ln];
}

uint32_t Field::frobenius_power(uint32_t a, uint32_t d) const {
    for (uint32_t i = 0; i < d; ++i) a = frob_[a];
    return a;
}

uint32_t Field::mul_poly(uint32_t a, uint32_t b) const {
    // Schoolbook product of the coefficient vectors mod the modulus.
    std::vector<uint32_t> ca(e_), cb(e_), prod(2 * e_ - 1, 0);
    for (uint32_t i = 0; i < e_; ++i) { ca[i] = a % p_; a /= p_; }
    for (uint32_t i = 0; i < e_; ++i) { cb[i] = b % p_; b /= p_; }
    for (uint32_t i = 0; i < e_; ++i)
        for (uint32_t j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(e_); --d) {
        uint32_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (uint32_t i = 0; i < e_; ++i) {
            uint32_t s = c * modulus_[i] % p_;
            prod[d - e_ + i] = (prod[d - e_ + i] + p_ - s) % p_;
        }
    }
    uint32_t r = 0, mult = 1;
    for (uint32_t i = 0; i < e_; ++i) { r += prod[i] * mult; mult *= p_; }
    return r;
}

void Field::build_tables() {
    frob_.resize(q_);
    exp_.assign(2 * (q_ - 1), 1);
    log_.assign(q_, 0);

    auto pow_poly = [&](uint32_t a, uint64_t n) {
        uint32_t r = 1;
        while (n) {
            if (n & 1) r = mul_poly(r, a);
            a = mul_poly(a, a);
            n >>= 1;
        }
        return r;
    };

    auto factors = prime_factors(q_ - 1);
    for (uint32_t g = 1; g < q_; ++g) {
        bool primitive = true;
        for (uint32_t f : factors)
            if (pow_poly(g, (q_ - 1) / f) == 1) { primitive = false; break; }
        if (primitive) { gen_ = g; break; }
    }
    if (gen_ == 0) gen_ = 1;  // q = 2: trivial group

    uint32_t x = 1;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        exp_[i + q_ - 1] = x;
        log_[x] = i;
        x = mul_poly(x, gen_);
    }
    for (uint32_t a = 0; a < q_; ++a) frob_[a] = pow_poly(a, p_);

    if (q_ <= 256) {
        add_tab_.resize(static_cast<size_t>(q_) * q_);
        mul_tab_.resize(static_cast<size_t>(q_) * q_);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b < q_; ++b) {
                add_tab_[a * q_ + b] = add(a, b);
                mul_tab_[a * q_ + b] = mul_poly(a, b);
            }
    }
}

Fq Field::elem(uint32_t index) const {
    if (index >= q_) raise(ErrorCode::OutOfRange, "element index out of range");
    return Fq(this, index);
}

Fq Field::zero() const { return Fq(this, 0); }
Fq Field::one() const { return Fq(this, 1); }

Fq Field::from_int(int64_t c) const {
    int64_t r = c % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return Fq(this, static_cast<uint32_t>(r));
}

Fq Field::trace(Fq x, uint32_t d) const {
    if (d == 0 || e_ % d != 0) raise(ErrorCode::NotASubfield, "GF(p^" + std::to_string(d) + ") is not a subfield");
    uint32_t acc = 0, y = x.value_in(this);
    for (uint32_t i = 0; i < e_ / d; ++i) {
        acc = add(acc, y);
        y = frobenius_power(y, d);
    }
    return Fq(this, acc);
}

uint32_t Field::trace_to_prime(uint32_t a) const { return trace(Fq(this, a), 1).v; }

Fq Field::solve_half_unit() const {
    if (e_ % 2 != 0) raise(ErrorCode::InvolutionTrivial, "FrobeniusHalf needs even extension degree");
    for (uint32_t a = 0; a < q_; ++a) {
        if (add(a, frobenius_power(a, e_ / 2)) == 1) return Fq(this, a);
    }
    raise(ErrorCode::InternalMismatch, "relative trace not surjective");
}

uint32_t Fq::literal_value(int64_t c) {
    // Literals are stored unreduced; they reduce mod p on first contact with
    // a field element.  Only tiny constants (0, 1, -1 patterns) occur here.
    if (c < 0 || c > 1) raise(ErrorCode::OutOfRange, "field literals must be 0 or 1");
    return static_cast<uint32_t>(c);
}

uint32_t Fq::value_in(const Field* f) const {
    if (F == f) return v;
    if (F == nullptr) return f->from_int(v).v;
    if (f == nullptr || !(*F == *f)) raise(ErrorCode::MixedRings, "elements of different fields");
    return v;
}

Fq operator+(Fq a, Fq b) {
    const Field* f = a.F ? a.F : b.F;
    if (!f) return Fq(static_cast<int64_t>(a.v + b.v));
    return Fq(f, f->add(a.value_in(f), b.value_in(f)));
}

Fq operator-(Fq a, Fq b) {
    const Field* f = a.F ? a.F : b.F;
    if (!f) {
        if (a.v < b.v) raise(ErrorCode::OutOfRange, "negative field literal");
        return Fq(static_cast<int64_t>(a.v - b.v));
    }
    return Fq(f, f->sub(a.value_in(f), b.value_in(f)));
}

Fq operator*(Fq a, Fq b) {
    const Field* f = a.F ? a.F : b.F;
    if (!f) return Fq(static_cast<int64_t>(a.v * b.v));
    return Fq(f, f->mul(a.value_in(f), b.value_in(f)));
}

Fq operator/(Fq a, Fq b) {
    const Field* f = a.F ? a.F : b.F;
    if (!f) raise(ErrorCode::OutOfRange, "division of field literals");
    return Fq(f, f->mul(a.value_in(f), f->inv(b.value_in(f))));
}

Fq Fq::operator-() const {
    if (!F) {
        if (v == 0) return *this;
        raise(ErrorCode::OutOfRange, "negation of nonzero literal");
    }
    return Fq(F, F->neg(v));
}

bool operator==(Fq a, Fq b) {
    const Field* f = a.F ? a.F : b.F;
    if (!f) return a.v == b.v;
    return a.value_in(f) == b.value_in(f);
}

Fq Fq::inverse() const {
    if (!F) {
        if (v == 1) return *this;
        raise(ErrorCode::OutOfRange, "inverse of field literal");
    }
    return Fq(F, F->inv(v));
}

std::string Fq::str() const {
    if (!F) return std::to_string(v);
    std::string s;
    uint32_t a = v;
    for (uint32_t i = 0; i < F->e(); ++i) {
        if (i) s += ':';
        s += std::to_string(a % F->p());
        a /= F->p();
    }
    return s;
}

void Involution::validate(const Field& f) const {
    switch (kind) {
        case InvolutionKind::Identity: return;
        case InvolutionKind::FrobeniusHalf:
            if (f.e() % 2 != 0) raise(ErrorCode::InvolutionTrivial, "FrobeniusHalf needs even extension degree");
            return;
        case InvolutionKind::SplitSwap:
            raise(ErrorCode::InvalidParam, "SplitSwap is only valid on the split ring");
    }
}

Fq Involution::operator()(Fq x) const {
    switch (kind) {
        case InvolutionKind::Identity: return x;
        case InvolutionKind::FrobeniusHalf: {
            if (!x.F) return x;
            return Fq(x.F, x.F->frobenius_power(x.v, x.F->e() / 2));
        }
        case InvolutionKind::SplitSwap:
            raise(ErrorCode::InvalidParam, "SplitSwap applied to a field element");
    }
    return x;
}

}  // namespace qfs
