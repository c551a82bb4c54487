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
#include <random>

namespace qfs {

/// Deterministic RNG wrapper.  mt19937_64 output is pinned by the standard,
/// and the bounded draw below avoids the implementation-defined
/// std::uniform_int_distribution, so identical seeds give identical streams
/// on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /// Unbiased uniform draw in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            uint64_t x = eng_();
            if (x < limit) return x % n;
        }
    }

    /// Derives an independent per-worker stream from a root seed.
    static uint64_t worker_seed(uint64_t root, uint64_t worker) {
        // splitmix64 scramble of (root, worker).
        uint64_t z = root + 0x9e3779b97f4a7c15ULL * (worker + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace qfs
