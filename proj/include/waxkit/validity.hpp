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

#ifndef WAXKIT_VALIDITY_HPP
#define WAXKIT_VALIDITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "waxkit/rng.hpp"
#include "waxkit/types.hpp"

namespace waxkit {

/// Validity decision for a fixed combiner.
///
/// A combiner is valid when almost every channel admits the decomposition,
/// so one random channel decides; extra trials only guard numerics.
struct Verdict {
    bool valid = false;
    int trials = 0;
    std::vector<double> residuals;
    /// "block-rank", "row-rank" or "decomposition" when invalid.
    std::optional<std::string> failed_condition;
};

/// Outcome of a necessary-condition subset scan.
struct SubsetCheck {
    bool pass = true;
    bool exhaustive = true;          ///< false once sampling replaced enumeration
    long long subsets_checked = 0;
    std::vector<int> witness_blocks;  ///< violating block indices (first hit)
    std::vector<int> witness_rows;    ///< per-block row offsets (row-rank check only)
    int observed_rank = 0;
    int required_rank = 0;
};

/// Sparsity limits for a 0/1 combiner.
struct SparsityBound {
    long long r_max = 0;        ///< maximum repetitions of one panel block
    bool r_max_unbounded = false;  ///< l == k removes the repetition cap
    int q = 0;                  ///< number of per-row weight classes consumed
    long long min_ones = 0;
};

/// Result of the admissible rank-profile search on a row selection.
struct RankProfileCap {
    int b_s = 0;            ///< largest admissible null-space width
    int required_rank = 0;  ///< k - b_s
    bool rank_ok = true;    ///< rank of the selected rows meets required_rank
};

/// Decides validity by decomposing `trials` random channels.
Verdict validate_combiner(const CMatrix& a, const Dims& dims, const RngSpec& rng, int trials = 1);

/// Every f-block submatrix must reach rank min(f*l, k). Exhaustive per
/// subset size up to subset_size_cap subsets, seeded sampling beyond.
SubsetCheck check_block_rank(const CMatrix& a, const Dims& dims, long long subset_size_cap = 10000);

/// Every selection of rows from distinct blocks must satisfy
/// k * rank > r * (k - l). Same enumeration cap policy.
SubsetCheck check_row_rank(const CMatrix& a, const Dims& dims, long long subset_size_cap = 10000);

/// Counting lower bound on the ones of any valid 0/1 combiner.
SparsityBound ones_lower_bound(long long m, long long k, long long l, long long t);

/// Largest admissible rank-profile width for a row selection described by
/// row_allocation (rows taken per block), by exhaustive 0/1 profile
/// enumeration. Instances beyond the enumeration budget raise budget_error.
RankProfileCap rank_profile_cap(const CMatrix& a_sub, const Dims& dims,
                                const std::vector<int>& row_allocation, int max_b);

}  // namespace waxkit

#endif  // WAXKIT_VALIDITY_HPP
