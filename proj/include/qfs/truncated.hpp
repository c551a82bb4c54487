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

#include <cmath>
#include <limits>

namespace qfs {

/// Float paired with a rigorous bound on the truncation error of the series
/// or product it approximates.  Extended precision keeps rounding noise far
/// below the tracked truncation bounds.
struct TruncatedValue {
    long double value = 0;
    long double tail = 0;

    static TruncatedValue exact(long double v) { return {v, 0}; }
};

inline TruncatedValue tv_add(TruncatedValue a, TruncatedValue b) { return {a.value + b.value, a.tail + b.tail}; }

inline TruncatedValue tv_sub(TruncatedValue a, TruncatedValue b) { return {a.value - b.value, a.tail + b.tail}; }

inline TruncatedValue tv_mul(TruncatedValue a, TruncatedValue b) {
    long double v = a.value * b.value;
    long double t = fabsl(a.value) * b.tail + fabsl(b.value) * a.tail + a.tail * b.tail;
    return {v, t};
}

inline TruncatedValue tv_scale(TruncatedValue a, long double c) { return {a.value * c, a.tail * fabsl(c)}; }

/// 1 / a with a bounded away from zero (|a.value| > a.tail required).
inline TruncatedValue tv_recip(TruncatedValue a) {
    long double lo = fabsl(a.value) - a.tail;
    long double v = 1.0L / a.value;
    long double t = a.tail / (fabsl(a.value) * lo);
    return {v, t};
}

/// Small cushion for accumulated long double rounding in |x|-sized sums.
inline long double rounding_slop(long double magnitude, long double terms) {
    return 64 * std::numeric_limits<long double>::epsilon() * (fabsl(magnitude) + 1) * (terms + 1);
}

}  // namespace qfs
