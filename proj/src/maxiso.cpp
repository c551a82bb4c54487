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

#include "qfs/maxiso.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace qfs {

namespace {

// Incremental scan over all vectors of the space, maintaining s(v, v) and the
// interaction rows s(v, e_j), s(e_j, v) so each step is O(dim).  Runs on raw
// element indices through the flat q*q field tables (present for every field
// this scan can reach).
class IsotropicScan {
public:
    explicit IsotropicScan(const QuadraticSpace& v)
        : v_(&v), f_(&v.field()), q_(v.field().q()), dim_(static_cast<size_t>(v.dim())) {
        if (!f_->has_op_tables()) raise(ErrorCode::TooLarge, "isotropic scan needs q <= 256");
        add_ = f_->add_table();
        mul_ = f_->mul_table();
        sigma_tab_.resize(q_);
        for (uint32_t a = 0; a < q_; ++a) sigma_tab_[a] = v.sigma()(Fq(f_, a)).v;
        delta_tab_.resize(q_);
        for (uint32_t c = 0; c < q_; ++c) delta_tab_[c] = f_->sub((c + 1) % q_, c);
        gram_.resize(dim_ * dim_);
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = 0; j < dim_; ++j)
                gram_[i * dim_ + j] = v.gram_s()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).v;
        lambda_.resize(q_);
        for (uint32_t a = 0; a < q_; ++a) lambda_[a] = v.realized().in_lambda(Fq(f_, a));
        digits_.assign(dim_, 0);
        vec_.assign(dim_, 0);
        s_row_.assign(dim_, 0);
        s_col_.assign(dim_, 0);
        s_vv_ = 0;
    }

    // Advances to the next vector in base-q counter order; false when done.
    bool advance() {
        size_t pos = 0;
        while (pos < dim_) {
            uint32_t c = digits_[pos];
            uint32_t next = c + 1 == q_ ? 0 : c + 1;
            digits_[pos] = next;
            apply_delta(pos, delta_tab_[c]);
            if (next != 0) return true;
            ++pos;
        }
        return false;
    }

    RowVec vec() const {
        RowVec out(static_cast<Eigen::Index>(dim_));
        for (size_t j = 0; j < dim_; ++j) out(static_cast<Eigen::Index>(j)) = Fq(f_, vec_[j]);
        return out;
    }
    const std::vector<uint32_t>& raw_vec() const { return vec_; }
    bool isotropic() const { return lambda_[s_vv_]; }

    // True if the first nonzero coordinate equals one (a canonical line rep).
    bool line_canonical() const {
        for (size_t j = 0; j < dim_; ++j) {
            if (digits_[j] != 0) return digits_[j] == 1;
        }
        return false;
    }

private:
    void apply_delta(size_t pos, uint32_t c) {
        // v' = v + c e_pos.
        uint32_t sc = sigma_tab_[c];
        const uint32_t* grow = gram_.data() + pos * dim_;
        // s(v',v') = s(v,v) + sigma(c) s(v,e_pos) + c s(e_pos,v) + c sigma(c) S_pos,pos.
        uint32_t acc = add_[s_vv_ * q_ + mul_[sc * q_ + s_row_[pos]]];
        acc = add_[acc * q_ + mul_[c * q_ + s_col_[pos]]];
        s_vv_ = add_[acc * q_ + mul_[mul_[c * q_ + sc] * q_ + grow[pos]]];
        // s(v',e_j) += c S_pos,j ; s(e_j,v') += sigma(c) S_j,pos.
        for (size_t j = 0; j < dim_; ++j) {
            s_row_[j] = add_[s_row_[j] * q_ + mul_[c * q_ + grow[j]]];
            s_col_[j] = add_[s_col_[j] * q_ + mul_[sc * q_ + gram_[j * dim_ + pos]]];
        }
        vec_[pos] = add_[vec_[pos] * q_ + c];
    }

    const QuadraticSpace* v_;
    const Field* f_;
    uint32_t q_;
    size_t dim_;
    const uint32_t* add_ = nullptr;
    const uint32_t* mul_ = nullptr;
    std::vector<uint32_t> sigma_tab_;
    std::vector<uint32_t> delta_tab_;
    std::vector<uint32_t> gram_;
    std::vector<char> lambda_;
    std::vector<uint32_t> digits_;
    std::vector<uint32_t> vec_;
    std::vector<uint32_t> s_row_;
    std::vector<uint32_t> s_col_;
    uint32_t s_vv_;
};

struct MemberLess {
    bool operator()(const Subspace& a, const Subspace& b) const {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (Eigen::Index i = 0; i < a.basis.rows(); ++i)
            for (Eigen::Index j = 0; j < a.basis.cols(); ++j) {
                if (a.basis(i, j).v != b.basis(i, j).v) return a.basis(i, j).v < b.basis(i, j).v;
            }
        return false;
    }
};

struct VecHash {
    size_t operator()(const std::vector<uint32_t>& v) const {
        size_t h = 1469598103934665603ULL;
        for (uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

// In-place RREF on a flat nrows x d index buffer through the field tables.
int raw_rref(std::vector<uint32_t>& m, int nrows, int d, const Field& f) {
    const uint32_t q = f.q();
    const uint32_t* add = f.add_table();
    const uint32_t* mul = f.mul_table();
    int row = 0;
    for (int col = 0; col < d && row < nrows; ++col) {
        int piv = -1;
        for (int i = row; i < nrows; ++i)
            if (m[i * d + col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < d; ++j) std::swap(m[piv * d + j], m[row * d + j]);
        uint32_t s = f.inv(m[row * d + col]);
        if (s != 1)
            for (int j = col; j < d; ++j) m[row * d + j] = mul[s * q + m[row * d + j]];
        for (int i = 0; i < nrows; ++i) {
            if (i == row) continue;
            uint32_t c = m[i * d + col];
            if (c == 0) continue;
            uint32_t nc = f.neg(c);
            for (int j = col; j < d; ++j) m[i * d + j] = add[m[i * d + j] * q + mul[nc * q + m[row * d + j]]];
        }
        ++row;
    }
    return row;
}

}  // namespace

void for_each_isotropic_line_rep(const QuadraticSpace& v, const std::function<void(const RowVec&)>& fn) {
    IsotropicScan scan(v);
    while (scan.advance()) {
        if (scan.line_canonical() && scan.isotropic()) fn(scan.vec());
    }
}

IsotropicSet enumerate_maximal_isotropic(const QuadraticSpace& v, uint64_t cap) {
    if (v.dim() % 2 != 0) raise(ErrorCode::NotMetabolic, "odd dimension");
    const int n = static_cast<int>(v.dim() / 2);
    Int predicted = count_formula(v.field().q(), n, v.realized().lambda_size());
    if (predicted > cap) raise(ErrorCode::TooLarge, "predicted member count exceeds the cap");
    if (!is_metabolic(v)) raise(ErrorCode::NotMetabolic, "space has no maximal isotropic subspace");

    std::vector<Subspace> members;
    std::vector<std::unordered_set<std::vector<uint32_t>, VecHash>> seen(n + 1);
    const Field& f = v.field();
    const int big_d = static_cast<int>(v.dim());
    const uint32_t fq = f.q();
    const uint32_t* addt = f.has_op_tables() ? f.add_table() : nullptr;
    const uint32_t* mult = f.has_op_tables() ? f.mul_table() : nullptr;
    if (!addt) raise(ErrorCode::TooLarge, "enumeration needs q <= 256");

    std::function<void(const Subspace&, const std::vector<uint32_t>&)> dfs =
        [&](const Subspace& x, const std::vector<uint32_t>& xraw) {
            const int t = static_cast<int>(x.dim());
            if (t == n) {
                members.push_back(x);
                return;
            }
            InducedSpace quot = quotient_space(v, x);
            const int qd = static_cast<int>(quot.space.dim());
            std::vector<uint32_t> sec(static_cast<size_t>(qd) * big_d);
            for (int i = 0; i < qd; ++i)
                for (int j = 0; j < big_d; ++j) sec[i * big_d + j] = quot.section_ambient(i, j).v;

            IsotropicScan scan(quot.space);
            std::vector<uint32_t> cand(static_cast<size_t>(t + 1) * big_d);
            while (scan.advance()) {
                if (!scan.line_canonical() || !scan.isotropic()) continue;
                const auto& u = scan.raw_vec();
                std::copy(xraw.begin(), xraw.end(), cand.begin());
                uint32_t* last = cand.data() + static_cast<size_t>(t) * big_d;
                std::fill(last, last + big_d, 0u);
                for (int k = 0; k < qd; ++k) {
                    uint32_t c = u[k];
                    if (c == 0) continue;
                    const uint32_t* srow = sec.data() + static_cast<size_t>(k) * big_d;
                    for (int j = 0; j < big_d; ++j) last[j] = addt[last[j] * fq + mult[c * fq + srow[j]]];
                }
                raw_rref(cand, t + 1, big_d, f);
                auto inserted = seen[t + 1].insert(cand);
                if (inserted.second) {
                    Mat basis(t + 1, big_d);
                    for (int i = 0; i <= t; ++i)
                        for (int j = 0; j < big_d; ++j) basis(i, j) = Fq(&f, cand[i * static_cast<size_t>(big_d) + j]);
                    Subspace grown;
                    grown.ambient = big_d;
                    grown.basis = std::move(basis);
                    dfs(grown, *inserted.first);
                }
            }
        };
    dfs(zero_subspace(f, v.dim()), std::vector<uint32_t>());

    std::sort(members.begin(), members.end(), MemberLess{});
    IsotropicSet out;
    out.ambient = v.dim();
    out.members = std::move(members);
    return out;
}

Int count_formula(uint64_t q, int n, uint64_t lambda_size) {
    if (n < 0) raise(ErrorCode::OutOfRange, "count_formula needs n >= 0");
    Int total = 1, qpow = 1;
    for (int j = 0; j < n; ++j) {
        total *= Int(lambda_size) * qpow + 1;
        qpow *= q;
    }
    return total;
}

Int count_formula(uint64_t q, int n, SpaceType type) { return count_formula(q, n, lambda_size_for(q, type)); }

Int fiber_size_formula(uint64_t q, int n, int dim_x, uint64_t lambda_size) {
    if (dim_x < 0 || dim_x > n) raise(ErrorCode::OutOfRange, "fiber dimension out of range");
    Int total = 1;
    for (int i = 1; i <= dim_x; ++i) {
        total *= Int(lambda_size) * boost::multiprecision::pow(Int(q), static_cast<unsigned>(n - i)) + 1;
    }
    return total;
}

Int fiber_size_formula(uint64_t q, int n, int dim_x, SpaceType type) {
    return fiber_size_formula(q, n, dim_x, lambda_size_for(q, type));
}

// ---- bit-packed GF(2) sampler ----
//
// Rows of the space are uint64 masks (dim <= 64).  One flag-growth level:
// draw a uniform nonzero isotropic v, split off the pivot pair (p, pv) and
// keep the section rows b_j = e_j (+ e_p when h(v, e_j) = 1), then push the
// transported Gram down one level.
namespace f2 {

struct Level {
    uint64_t v = 0;                  // chosen isotropic vector (parent coords)
    std::vector<int> coords;         // child coordinate -> parent coordinate j
    std::vector<uint64_t> section;   // child coordinate -> parent-coord row mask
};

struct Space {
    int dim = 0;
    std::vector<uint64_t> srows;  // S_{i,:} as bit masks
    bool q_trivial = false;       // symplectic: Lambda = F2 kills q
};

inline int parity64(uint64_t x) { return __builtin_parityll(x); }

inline uint64_t s_accum(const Space& sp, uint64_t x) {
    // XOR of S rows selected by x: bit j = sum_a x_a S_{a,j}.
    uint64_t t = 0;
    uint64_t rest = x;
    while (rest) {
        int a = __builtin_ctzll(rest);
        rest &= rest - 1;
        t ^= sp.srows[a];
    }
    return t;
}

inline bool isotropic(const Space& sp, uint64_t x) {
    if (sp.q_trivial) return true;
    return parity64(s_accum(sp, x) & x) == 0;
}

// One quotient step; returns false when no isotropic vector exists (cannot
// happen on metabolic input).
bool step(Space& sp, Level& lvl, Rng& rng, int trial_cap) {
    const int d = sp.dim;
    const uint64_t mask = d == 64 ? ~0ULL : ((1ULL << d) - 1);
    uint64_t v = 0;
    bool found = false;
    if (d <= 12) {
        // Exact uniform choice among all isotropic vectors at tiny dims.
        std::vector<uint64_t> iso;
        for (uint64_t cand = 1; cand <= mask; ++cand)
            if (isotropic(sp, cand)) iso.push_back(cand);
        if (iso.empty()) return false;
        v = iso[rng.below(iso.size())];
        found = true;
    } else {
        for (int trial = 0; trial < trial_cap && !found; ++trial) {
            v = rng.next() & mask;
            found = v != 0 && isotropic(sp, v);
        }
        if (!found) raise(ErrorCode::SamplingCapExceeded, "no isotropic vector found within the trial cap");
    }
    // h(v, e_j) = sum_a v_a S_aj + sum_a v_a S_ja.
    uint64_t w = s_accum(sp, v);
    for (int j = 0; j < d; ++j)
        if (parity64(sp.srows[j] & v)) w ^= (1ULL << j);
    if (w == 0) raise(ErrorCode::InternalMismatch, "degenerate pairing in packed sampler");
    int p = __builtin_ctzll(w);
    uint64_t vv = v & ~(1ULL << p);
    if (vv == 0) raise(ErrorCode::InternalMismatch, "isotropic vector collapses to the pivot");
    int pv = __builtin_ctzll(vv);

    lvl.v = v;
    lvl.coords.clear();
    lvl.section.clear();
    std::vector<uint64_t> srows_next;
    for (int j = 0; j < d; ++j) {
        if (j == p || j == pv) continue;
        uint64_t row = (1ULL << j);
        if ((w >> j) & 1) row ^= (1ULL << p);
        lvl.coords.push_back(j);
        lvl.section.push_back(row);
    }
    // Transported Gram: S'_{ij} = s(c_i, c_j) = parity(s_accum(c_i) & c_j).
    const int nd = d - 2;
    srows_next.assign(nd, 0);
    std::vector<uint64_t> tacc(nd);
    for (int i = 0; i < nd; ++i) tacc[i] = s_accum(sp, lvl.section[i]);
    for (int i = 0; i < nd; ++i) {
        uint64_t row = 0;
        for (int j = 0; j < nd; ++j)
            if (parity64(tacc[i] & lvl.section[j])) row |= (1ULL << j);
        srows_next[i] = row;
    }
    sp.dim = nd;
    sp.srows = std::move(srows_next);
    return true;
}

// Packed rows of a uniform draw, in the original coordinates.
std::vector<uint64_t> sample_rows(Space sp, Rng& rng, int trial_cap) {
    std::vector<Level> chain;
    const int n = sp.dim / 2;
    chain.reserve(n);
    for (int level = 0; level < n; ++level) {
        Level lvl;
        if (!step(sp, lvl, rng, trial_cap)) raise(ErrorCode::NotMetabolic, "anisotropic kernel encountered");
        chain.push_back(std::move(lvl));
    }
    std::vector<uint64_t> rows;
    for (int level = n - 1; level >= 0; --level) {
        const Level& lvl = chain[level];
        std::vector<uint64_t> lifted;
        lifted.reserve(rows.size() + 1);
        for (uint64_t r : rows) {
            uint64_t out = 0;
            uint64_t rest = r;
            while (rest) {
                int j = __builtin_ctzll(rest);
                rest &= rest - 1;
                out ^= lvl.section[j];
            }
            lifted.push_back(out);
        }
        lifted.push_back(lvl.v);
        rows = std::move(lifted);
    }
    return rows;
}

int rank_packed(std::vector<uint64_t> rows) {
    int r = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] == 0) continue;
        int piv = __builtin_ctzll(rows[i]);
        for (size_t j = 0; j < rows.size(); ++j)
            if (j != i && ((rows[j] >> piv) & 1)) rows[j] ^= rows[i];
        ++r;
    }
    return r;
}

Space pack_space(const QuadraticSpace& v) {
    Space sp;
    sp.dim = static_cast<int>(v.dim());
    sp.q_trivial = v.realized().lambda_size() == v.field().q();
    sp.srows.assign(sp.dim, 0);
    for (int i = 0; i < sp.dim; ++i)
        for (int j = 0; j < sp.dim; ++j)
            if (v.gram_s()(i, j).v) sp.srows[i] |= (1ULL << j);
    return sp;
}

bool packable(const QuadraticSpace& v) { return v.field().p() == 2 && v.field().e() == 1 && v.dim() <= 64; }

}  // namespace f2

Subspace sample_uniform(const QuadraticSpace& v, Rng& rng, int trial_cap) {
    if (v.dim() % 2 != 0) raise(ErrorCode::NotMetabolic, "odd dimension");
    const Field& f = v.field();
    const int n = static_cast<int>(v.dim() / 2);
    if (f2::packable(v)) {
        auto rows = f2::sample_rows(f2::pack_space(v), rng, trial_cap);
        Mat basis = zeros(f, n, v.dim());
        for (int i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < v.dim(); ++j)
                if ((rows[i] >> j) & 1) basis(i, j) = f.one();
        return span(v.dim(), basis);
    }

    std::vector<InducedSpace> chain;
    chain.reserve(n);
    const QuadraticSpace* cur = &v;
    for (int level = 0; level < n; ++level) {
        const Eigen::Index d = cur->dim();
        RowVec x = zero_vec(f, d);
        bool found = false;
        // Exhaustive scan exactly decides tiny levels (and non-metabolic
        // anisotropic tails); rejection handles the rest.
        double space_size = std::pow(static_cast<double>(f.q()), static_cast<double>(d));
        if (space_size <= 4096) {
            std::vector<RowVec> isotropic;
            SpanWalker walk(f, identity(f, d), d);
            while (walk.advance()) {
                if (cur->eval_q(walk.current()).is_zero()) isotropic.push_back(walk.current());
            }
            if (isotropic.empty()) raise(ErrorCode::NotMetabolic, "anisotropic kernel encountered");
            x = isotropic[rng.below(isotropic.size())];
            found = true;
        } else {
            for (int trial = 0; trial < trial_cap && !found; ++trial) {
                bool nonzero = false;
                for (Eigen::Index j = 0; j < d; ++j) {
                    uint32_t c = static_cast<uint32_t>(rng.below(f.q()));
                    x(j) = f.elem(c);
                    nonzero = nonzero || c != 0;
                }
                found = nonzero && cur->eval_q(x).is_zero();
            }
            if (!found) raise(ErrorCode::SamplingCapExceeded, "no isotropic vector found within the trial cap");
        }
        Mat m(1, d);
        m.row(0) = x;
        chain.push_back(quotient_space(*cur, span(d, m)));
        cur = &chain.back().space;
    }

    // Lift the flag back through the stored sections.
    Mat rows = zeros(f, 0, 0);
    for (int level = n - 1; level >= 0; --level) {
        const InducedSpace& q = chain[level];
        Mat lifted(rows.rows() + 1, q.x.ambient);
        for (Eigen::Index i = 0; i < rows.rows(); ++i) lifted.row(i) = q.lift(RowVec(rows.row(i)));
        lifted.row(rows.rows()) = q.x.basis.row(0);
        rows = std::move(lifted);
    }
    if (n == 0) return zero_subspace(f, v.dim());
    return span(v.dim(), rows);
}

std::map<int, uint64_t> intersection_sim(const QuadraticSpace& v, const Subspace& w, uint64_t samples, Rng& rng,
                                         int trial_cap) {
    std::map<int, uint64_t> counts;
    const int n = static_cast<int>(v.dim() / 2);
    if (f2::packable(v)) {
        f2::Space base = f2::pack_space(v);
        std::vector<uint64_t> wrows(w.dim(), 0);
        for (Eigen::Index i = 0; i < w.dim(); ++i)
            for (Eigen::Index j = 0; j < v.dim(); ++j)
                if (w.basis(i, j).v) wrows[i] |= (1ULL << j);
        for (uint64_t s = 0; s < samples; ++s) {
            auto rows = f2::sample_rows(base, rng, trial_cap);
            std::vector<uint64_t> stacked = rows;
            stacked.insert(stacked.end(), wrows.begin(), wrows.end());
            int inter = n + static_cast<int>(w.dim()) - f2::rank_packed(std::move(stacked));
            counts[inter]++;
        }
        return counts;
    }
    for (uint64_t s = 0; s < samples; ++s) {
        Subspace z = sample_uniform(v, rng, trial_cap);
        counts[static_cast<int>(intersect(z, w).dim())]++;
    }
    return counts;
}

std::map<int, Rat> intersection_distribution_exact(const QuadraticSpace& v, const Subspace& w, uint64_t cap) {
    if (!v.is_maximal_isotropic(w)) raise(ErrorCode::NotMaximalIsotropic, "reference subspace");
    IsotropicSet all = enumerate_maximal_isotropic(v, cap);
    std::map<int, Rat> dist;
    for (const auto& z : all.members) {
        int d = static_cast<int>(intersect(z, w).dim());
        dist[d] += 1;
    }
    Rat total(static_cast<uint64_t>(all.size()));
    for (auto& [d, mass] : dist) mass /= total;
    return dist;
}

}  // namespace qfs
