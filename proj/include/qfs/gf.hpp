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

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "qfs/errors.hpp"

namespace qfs {

class Field;
using FieldPtr = std::shared_ptr<const Field>;
struct Fq;

/// Finite field GF(p^e), q = p^e <= 2^16.
///
/// Elements are canonical polynomial representatives of degree < e with
/// coefficients in GF(p), encoded as the integer sum c_0 + c_1 p + ... +
/// c_{e-1} p^{e-1} (constant term is the least significant digit).  The
/// modulus is deterministic for each (p, e): a Conway polynomial when
/// tabulated, otherwise the lexicographically first monic irreducible in
/// constant-first coefficient order.  Instances are immutable and interned,
/// so they may be shared freely between threads.
class Field {
public:
    /// Interned constructor; the same (p, e) always yields the same object.
    static FieldPtr make(uint32_t p, uint32_t e);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }
    /// Monic modulus, coefficient list with constant term first, length e+1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Fq elem(uint32_t index) const;
    Fq zero() const;
    Fq one() const;
    /// Embeds the integer c as c * 1 (reduced mod p).
    Fq from_int(int64_t c) const;

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t n) const;
    /// x -> x^p.
    uint32_t frobenius(uint32_t a) const { return frob_[a]; }
    /// x -> x^{p^d}.
    uint32_t frobenius_power(uint32_t a, uint32_t d) const;

    /// Relative trace into GF(p^d), d | e: sum of x^{p^{d i}}.  The result is
    /// returned as an element of this field (it lies in the subfield).
    Fq trace(Fq x, uint32_t d) const;
    /// Absolute trace Tr_{k/GF(p)} as an integer in [0, p).
    uint32_t trace_to_prime(uint32_t a) const;

    /// Deterministically first element with x + x^{p^{e/2}} = 1.
    Fq solve_half_unit() const;

    /// Multiplicative generator used for the log tables.
    uint32_t generator() const { return gen_; }

    /// Flat q*q lookup tables, present for q <= 256 (hot-path scans).
    bool has_op_tables() const { return !add_tab_.empty(); }
    const uint32_t* add_table() const { return add_tab_.data(); }
    const uint32_t* mul_table() const { return mul_tab_.data(); }

    bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_; }

private:
    Field(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);
    void build_tables();
    uint32_t mul_poly(uint32_t a, uint32_t b) const;

    uint32_t p_, e_, q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;      // size 2(q-1), exp_[i] = g^i
    std::vector<uint32_t> log_;      // size q, log_[exp_[i]] = i for i < q-1
    std::vector<uint32_t> frob_;     // size q, x -> x^p
    std::vector<uint32_t> add_tab_;  // q*q, only for q <= 256
    std::vector<uint32_t> mul_tab_;  // q*q, only for q <= 256
    uint32_t gen_ = 0;
    bool xor_add_ = false;  // p == 2: addition is XOR of indices
};

/// Element of a finite field.  A null field pointer marks a small integer
/// literal (used for generic zero/one initialization); literals coerce to
/// the other operand's field on first contact.
struct Fq {
    const Field* F = nullptr;
    uint32_t v = 0;

    Fq() = default;
    explicit Fq(int64_t literal) : F(nullptr), v(literal_value(literal)) {}
    Fq(const Field* f, uint32_t value) : F(f), v(value) {}

    bool is_literal() const { return F == nullptr; }

    friend Fq operator+(Fq a, Fq b);
    friend Fq operator-(Fq a, Fq b);
    friend Fq operator*(Fq a, Fq b);
    friend Fq operator/(Fq a, Fq b);
    Fq operator-() const;
    Fq& operator+=(Fq o) { return *this = *this + o; }
    Fq& operator-=(Fq o) { return *this = *this - o; }
    Fq& operator*=(Fq o) { return *this = *this * o; }

    friend bool operator==(Fq a, Fq b);
    friend bool operator!=(Fq a, Fq b) { return !(a == b); }

    Fq inverse() const;
    bool is_zero() const { return v == 0; }

    /// Coefficient tuple "c0" or "c0:c1:...:c_{e-1}" (canonical text form).
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, Fq a) { return os << a.str(); }

    static uint32_t literal_value(int64_t c);
    /// Value of this element in f (coerces literals, checks field match).
    uint32_t value_in(const Field* f) const;
};

/// Involution kinds on a coefficient ring.
enum class InvolutionKind {
    Identity,
    FrobeniusHalf,  // x -> x^{p^{e/2}}, requires e even
    SplitSwap,      // only valid on the split ring k0 + k0
};

struct Involution {
    InvolutionKind kind = InvolutionKind::Identity;

    bool trivial() const { return kind == InvolutionKind::Identity; }
    /// Checks validity on the given field (FrobeniusHalf needs e even;
    /// SplitSwap is never valid on a plain field).
    void validate(const Field& f) const;
    Fq operator()(Fq x) const;

    bool operator==(const Involution& o) const { return kind == o.kind; }
};

/// Element of the split ring k0 + k0 with componentwise operations; the
/// swap involution exchanges the two components.
struct SplitElem {
    Fq l, r;

    SplitElem() = default;
    SplitElem(Fq left, Fq right) : l(left), r(right) {}
    explicit SplitElem(int64_t c) : l(c), r(c) {}

    friend SplitElem operator+(SplitElem a, SplitElem b) { return {a.l + b.l, a.r + b.r}; }
    friend SplitElem operator-(SplitElem a, SplitElem b) { return {a.l - b.l, a.r - b.r}; }
    friend SplitElem operator*(SplitElem a, SplitElem b) { return {a.l * b.l, a.r * b.r}; }
    SplitElem operator-() const { return {-l, -r}; }
    friend bool operator==(SplitElem a, SplitElem b) { return a.l == b.l && a.r == b.r; }
    friend bool operator!=(SplitElem a, SplitElem b) { return !(a == b); }

    SplitElem swapped() const { return {r, l}; }
    bool is_zero() const { return l.is_zero() && r.is_zero(); }

    std::string str() const { return "(" + l.str() + "," + r.str() + ")"; }
    friend std::ostream& operator<<(std::ostream& os, SplitElem a) { return os << a.str(); }
};

}  // namespace qfs
