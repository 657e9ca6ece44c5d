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

#include "waxkit/validity.hpp"

#include <algorithm>
#include <numeric>

#include "waxkit/linalg.hpp"
#include "waxkit/wax.hpp"

namespace waxkit {

namespace {

/// C(n, k) saturated at `cap`.
long long comb_capped(long long n, long long k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long c = 1;
    for (long long i = 1; i <= k; ++i) {
        if (c > cap) return cap + 1;
        c = c * (n - k + i) / i;
    }
    return std::min(c, cap + 1);
}

bool next_combination(std::vector<int>& idx, int n) {
    const int f = static_cast<int>(idx.size());
    for (int i = f - 1; i >= 0; --i) {
        if (idx[i] < n - f + i) {
            ++idx[i];
            for (int j = i + 1; j < f; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> sample_distinct(RandomStream& rs, int n, int f) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < f; ++i) {
        const int j = i + static_cast<int>(rs.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + f);
    std::sort(out.begin(), out.end());
    return out;
}

CMatrix stack_blocks(const CMatrix& a, const std::vector<int>& blocks, int l) {
    CMatrix sub(static_cast<arma::uword>(blocks.size()) * l, a.n_cols);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        sub.rows(i * l, (i + 1) * l - 1) = a.rows(blocks[i] * l, (blocks[i] + 1) * l - 1);
    return sub;
}

}  // namespace

Verdict validate_combiner(const CMatrix& a, const Dims& dims, const RngSpec& rng, int trials) {
    require_square(dims);
    if (trials < 1) throw invalid_input("validate_combiner: trials must be >= 1");
    if (!satisfies_existence(dims))
        throw precondition_error("validate_combiner: dims below the existence bound, validity undefined");
    if (static_cast<int>(a.n_rows) != dims.m || static_cast<int>(a.n_cols) != dims.t)
        throw dim_error("validate_combiner: combiner shape does not match dims");

    Verdict v;
    v.trials = trials;
    v.valid = true;
    for (int i = 0; i < trials; ++i) {
        const CMatrix h = sample_gaussian(derive(rng, 2 * static_cast<std::uint64_t>(i)), dims.m, dims.k);
        const WaxResult r = wax_decompose(h, a, dims, derive(rng, 2 * static_cast<std::uint64_t>(i) + 1));
        v.residuals.push_back(r.residual);
        if (!r.success) {
            v.valid = false;
            // Attribute the failure to the strongest violated necessary
            // condition; a small cap keeps this diagnostic path cheap.
            if (!check_block_rank(a, dims, 200).pass)
                v.failed_condition = "block-rank";
            else if (!check_row_rank(a, dims, 200).pass)
                v.failed_condition = "row-rank";
            else
                v.failed_condition = "decomposition";
            break;
        }
    }
    return v;
}

SubsetCheck check_block_rank(const CMatrix& a, const Dims& dims, long long subset_size_cap) {
    require_square(dims);
    if (static_cast<int>(a.n_rows) != dims.m) throw dim_error("check_block_rank: combiner rows do not match dims");
    const int p = dims.m / dims.l;
    const int l = dims.l, k = dims.k;

    SubsetCheck out;
    for (int f = 1; f <= p; ++f) {
        const int need = std::min(f * l, k);
        const bool exhaustive = comb_capped(p, f, subset_size_cap) <= subset_size_cap;
        if (!exhaustive) out.exhaustive = false;

        auto test = [&](const std::vector<int>& blocks) -> bool {
            ++out.subsets_checked;
            const int rank = numeric_rank(stack_blocks(a, blocks, l));
            if (rank < need) {
                out.pass = false;
                out.witness_blocks = blocks;
                out.observed_rank = rank;
                out.required_rank = need;
                return false;
            }
            return true;
        };

        if (exhaustive) {
            std::vector<int> idx(f);
            std::iota(idx.begin(), idx.end(), 0);
            do {
                if (!test(idx)) return out;
            } while (next_combination(idx, p));
        } else {
            RandomStream rs(RngSpec{0x57ab1eu, static_cast<std::uint64_t>(f)});
            for (long long s = 0; s < subset_size_cap; ++s)
                if (!test(sample_distinct(rs, p, f))) return out;
        }
    }
    return out;
}

SubsetCheck check_row_rank(const CMatrix& a, const Dims& dims, long long subset_size_cap) {
    require_square(dims);
    if (static_cast<int>(a.n_rows) != dims.m) throw dim_error("check_row_rank: combiner rows do not match dims");
    const int p = dims.m / dims.l;
    const int l = dims.l, k = dims.k;

    SubsetCheck out;
    for (int r = 1; r <= p; ++r) {
        // Selections: r blocks, one row inside each.
        long long count = comb_capped(p, r, subset_size_cap);
        for (int i = 0; i < r && count <= subset_size_cap; ++i) {
            count *= l;
            if (count > subset_size_cap) count = subset_size_cap + 1;
        }
        const bool exhaustive = count <= subset_size_cap;
        if (!exhaustive) out.exhaustive = false;

        auto test = [&](const std::vector<int>& blocks, const std::vector<int>& rows) -> bool {
            ++out.subsets_checked;
            CMatrix sub(static_cast<arma::uword>(r), a.n_cols);
            for (int i = 0; i < r; ++i) sub.row(i) = a.row(blocks[i] * l + rows[i]);
            const int rank = numeric_rank(sub);
            // rank must exceed r*(k-l)/k, compared in integers.
            if (static_cast<long long>(rank) * k <= static_cast<long long>(r) * (k - l)) {
                out.pass = false;
                out.witness_blocks = blocks;
                out.witness_rows = rows;
                out.observed_rank = rank;
                out.required_rank = static_cast<int>(static_cast<long long>(r) * (k - l) / k) + 1;
                return false;
            }
            return true;
        };

        if (exhaustive) {
            std::vector<int> blocks(r);
            std::iota(blocks.begin(), blocks.end(), 0);
            do {
                std::vector<int> rows(r, 0);
                while (true) {
                    if (!test(blocks, rows)) return out;
                    int d = r - 1;
                    while (d >= 0 && rows[d] == l - 1) rows[d--] = 0;
                    if (d < 0) break;
                    ++rows[d];
                }
            } while (next_combination(blocks, p));
        } else {
            RandomStream rs(RngSpec{0x57ab1eu, 0x1000u + static_cast<std::uint64_t>(r)});
            for (long long s = 0; s < subset_size_cap; ++s) {
                const auto blocks = sample_distinct(rs, p, r);
                std::vector<int> rows(r);
                for (auto& row : rows) row = static_cast<int>(rs.below(l));
                if (!test(blocks, rows)) return out;
            }
        }
    }
    return out;
}

SparsityBound ones_lower_bound(long long m, long long k, long long l, long long t) {
    if (m < 1 || k < 1 || l < 1 || t < 1) throw invalid_input("ones_lower_bound: arguments must be positive");
    if (l > k) throw precondition_error("ones_lower_bound: requires l <= k");
    if (t < l) throw precondition_error("ones_lower_bound: requires t >= l");

    SparsityBound b;
    if (l == k) {
        // No repetition cap; one 1 per row already meets every condition.
        b.r_max_unbounded = true;
        b.q = 1;
        b.min_ones = m;
        return b;
    }
    b.r_max = (k - 1) / (k - l);  // ceil(l / (k - l))

    // Rows of weight w come in C(t, w) patterns, each usable r_max times.
    // Fill the m rows cheapest-first; q is the heaviest weight consumed.
    const long long cap = 4 * m;  // binomials beyond this cannot change q
    long long filled = 0;
    long long q = 0;
    while (filled < m) {
        ++q;
        if (q > t) throw precondition_error("ones_lower_bound: row budget cannot cover the matrix");
        filled += b.r_max * comb_capped(t, q, cap);
    }
    b.q = static_cast<int>(q);
    long long bound = q * m;
    for (long long w = 1; w < q; ++w) bound += b.r_max * (w - q) * comb_capped(t, w, cap);
    b.min_ones = bound;
    return b;
}

RankProfileCap rank_profile_cap(const CMatrix& a_sub, const Dims& dims,
                                const std::vector<int>& row_allocation, int max_b) {
    require_square(dims);
    const int p = dims.m / dims.l;
    const int l = dims.l, k = dims.k;
    if (static_cast<int>(row_allocation.size()) != p)
        throw dim_error("rank_profile_cap: row_allocation must list every block");
    long long total = 0;
    for (int ap : row_allocation) {
        if (ap < 0 || ap > l) throw invalid_input("rank_profile_cap: row allocation outside [0, l]");
        total += ap;
    }
    if (total != static_cast<long long>(a_sub.n_rows))
        throw dim_error("rank_profile_cap: selected rows do not match allocation");

    // Blocks without selected rows never constrain the profile.
    std::vector<int> abar;
    for (int ap : row_allocation)
        if (ap > 0) abar.push_back(l - ap);
    const int pa = static_cast<int>(abar.size());

    const int b_hi = std::min(max_b, k);
    if (static_cast<long long>(pa) * b_hi > 24)
        throw budget_error("rank_profile_cap: profile enumeration budget exceeded");

    auto feasible = [&](int bw) -> bool {
        if (pa == 0) return true;  // unconstrained
        const std::uint64_t masks = 1ull << (static_cast<unsigned>(bw) * pa);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            bool ok = true;
            std::vector<int> colsum(pa, 0);
            int running = 0;
            for (int b = 0; b < bw && ok; ++b) {
                int row_gain = 0;
                for (int pp = 0; pp < pa; ++pp) {
                    if ((mask >> (static_cast<unsigned>(b) * pa + pp)) & 1u)
                        row_gain += l - colsum[pp];
                }
                if (k - l * pa + running + row_gain < b + 1) ok = false;
                for (int pp = 0; pp < pa && ok; ++pp) {
                    if ((mask >> (static_cast<unsigned>(b) * pa + pp)) & 1u) {
                        if (++colsum[pp] > abar[pp]) ok = false;
                        ++running;
                    }
                }
            }
            if (ok) return true;
        }
        return false;
    };

    RankProfileCap out;
    for (int bw = b_hi; bw >= 1; --bw) {
        if (feasible(bw)) {
            out.b_s = bw;
            break;
        }
    }
    out.required_rank = k - out.b_s;
    out.rank_ok = out.required_rank <= 0 || a_sub.n_rows == 0
                      ? out.required_rank <= 0
                      : numeric_rank(a_sub) >= out.required_rank;
    return out;
}

}  // namespace waxkit
