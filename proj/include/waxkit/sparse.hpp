// SPDX-License-Identifier: Apache-2.0
//
// waxkit: decentralized multi-antenna processing via the WAX decomposition
// Copyright (C) 2026 the waxkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WAXKIT_SPARSE_HPP
#define WAXKIT_SPARSE_HPP

#include "waxkit/rng.hpp"
#include "waxkit/types.hpp"

namespace waxkit {

/// Outcome of the sparse combiner search. The combiner is 0/1, every row and
/// column carries at least a 1, and sum_modules counts the 2-input adders
/// needed to implement it (ones - t, floored at 0).
struct SearchResult {
    CMatrix a;
    long long ones = 0;
    long long sum_modules = 0;
    bool valid = false;
    long long iterations = 0;  ///< validity evaluations spent
};

/// Monte Carlo validity estimate over random sparse draws.
struct FractionReport {
    double fraction_valid = 0.0;
    double std_error = 0.0;
    int trials = 0;
};

/// Random 0/1 combiner with round(ones_fraction * m * t) ones, at least one
/// 1 per row and per column, and at least l distinct columns touched inside
/// every panel block. Budgets below max(m, t) are rejected.
CMatrix random_sparse_a(const Dims& dims, double ones_fraction, const RngSpec& rng);

/// Grows a random valid 0/1 combiner, then repeatedly drops single 1s while
/// validity survives. `budget` caps the validity evaluations across all
/// restarts; the best (fewest-ones) valid result wins. A result that spent
/// the budget without finding any valid combiner reports valid = false.
SearchResult minimize_ones(const Dims& dims, const RngSpec& rng, long long budget = 2000);

/// Fraction of `trials` random_sparse_a draws that validate.
FractionReport valid_fraction(const Dims& dims, double ones_fraction, int trials, const RngSpec& rng);

}  // namespace waxkit

#endif  // WAXKIT_SPARSE_HPP
