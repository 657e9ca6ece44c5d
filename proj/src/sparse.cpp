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

#include "waxkit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "waxkit/linalg.hpp"
#include "waxkit/validity.hpp"
#include "waxkit/wax.hpp"

namespace waxkit {

namespace {

long long count_ones(const CMatrix& a) {
    long long n = 0;
    for (const auto& e : a)
        if (e.real() != 0.0) ++n;
    return n;
}

bool rows_cols_covered(const CMatrix& a) {
    for (arma::uword i = 0; i < a.n_rows; ++i)
        if (arma::accu(arma::abs(a.row(i))) == 0.0) return false;
    for (arma::uword j = 0; j < a.n_cols; ++j)
        if (arma::accu(arma::abs(a.col(j))) == 0.0) return false;
    return true;
}

/// Distinct columns carrying a 1 inside block p must reach l, otherwise the
/// block rank cannot reach l.
bool block_support_ok(const CMatrix& a, int p_idx, int l) {
    int support = 0;
    for (arma::uword j = 0; j < a.n_cols; ++j) {
        for (int i = 0; i < l; ++i) {
            if (a(p_idx * l + i, j).real() != 0.0) {
                ++support;
                break;
            }
        }
    }
    return support >= l;
}

/// One-channel validity probe, the workhorse of the search loop.
bool probe_valid(const CMatrix& a, const Dims& dims, RandomStream& rs) {
    const CMatrix h = sample_gaussian(RngSpec{rs.spec().seed, rs.next_u64()}, dims.m, dims.k);
    const WaxResult r = wax_decompose(h, a, dims, RngSpec{rs.spec().seed, rs.next_u64()});
    return r.success;
}

}  // namespace

CMatrix random_sparse_a(const Dims& dims, double ones_fraction, const RngSpec& rng) {
    require_square(dims);
    const int m = dims.m, t = dims.t, l = dims.l;
    const int p = m / l;
    if (!(ones_fraction > 0.0 && ones_fraction <= 1.0))
        throw invalid_input("random_sparse_a: ones_fraction must lie in (0, 1]");
    if (t < l) throw precondition_error("random_sparse_a: t < l cannot support full block rank");
    const long long budget = std::llround(ones_fraction * m * t);
    if (budget < std::max(m, t))
        throw precondition_error("random_sparse_a: ones budget below row/column coverage");

    RandomStream rs(rng);
    CMatrix a(m, t, arma::fill::zeros);

    // Deal columns from repeated seeded permutations so each block touches l
    // distinct columns and, while the deck lasts, every column gets covered.
    std::vector<int> deck(t);
    std::iota(deck.begin(), deck.end(), 0);
    rs.shuffle(deck);
    std::size_t deal = 0;
    long long placed = 0;
    for (int pp = 0; pp < p; ++pp) {
        std::vector<int> cols;
        while (static_cast<int>(cols.size()) < l) {
            if (deal == deck.size()) {
                rs.shuffle(deck);
                deal = 0;
            }
            const int c = deck[deal++];
            if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
        }
        rs.shuffle(cols);
        for (int i = 0; i < l; ++i) {
            a(pp * l + i, cols[i]) = 1.0;
            ++placed;
        }
    }

    for (int j = 0; j < t; ++j) {
        if (arma::accu(arma::abs(a.col(j))) == 0.0) {
            a(rs.below(m), j) = 1.0;
            ++placed;
        }
    }

    if (placed < budget) {
        std::vector<std::pair<int, int>> empty;
        empty.reserve(static_cast<std::size_t>(m) * t - placed);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < t; ++j)
                if (a(i, j).real() == 0.0) empty.emplace_back(i, j);
        rs.shuffle(empty);
        for (long long e = 0; e < budget - placed && e < static_cast<long long>(empty.size()); ++e)
            a(empty[e].first, empty[e].second) = 1.0;
    }
    return a;
}

SearchResult minimize_ones(const Dims& dims, const RngSpec& rng, long long budget) {
    require_square(dims);
    if (!satisfies_existence(dims))
        throw precondition_error("minimize_ones: dims below the existence bound");
    const int m = dims.m, t = dims.t, l = dims.l;
    const int p = m / l;

    SearchResult best;
    best.ones = std::numeric_limits<long long>::max();
    long long evals = 0;

    const int max_restarts = 3;
    for (int restart = 0; restart < max_restarts && evals < budget; ++restart) {
        RandomStream rs(derive(rng, 0xABCDu + restart));

        // Phase 1: grow from the minimal covered support until valid.
        CMatrix a = random_sparse_a(dims, static_cast<double>(std::max(m, t)) / (static_cast<double>(m) * t),
                                    derive(rng, 0x5EEDu + restart));
        bool have_valid = false;
        while (evals < budget) {
            bool necessary_ok = true;
            for (int pp = 0; pp < p && necessary_ok; ++pp)
                necessary_ok = numeric_rank(a.rows(pp * l, (pp + 1) * l - 1)) == l;
            if (necessary_ok) {
                ++evals;
                if (probe_valid(a, dims, rs)) {
                    have_valid = true;
                    break;
                }
            }
            // Add a 1 at a random empty cell.
            std::vector<std::pair<int, int>> empty;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < t; ++j)
                    if (a(i, j).real() == 0.0) empty.emplace_back(i, j);
            if (empty.empty()) break;
            const auto cell = empty[rs.below(empty.size())];
            a(cell.first, cell.second) = 1.0;
        }
        if (!have_valid) continue;

        // Phase 2: sweep removals in shuffled order until a full sweep keeps
        // every remaining 1.
        bool changed = true;
        while (changed && evals < budget) {
            changed = false;
            std::vector<std::pair<int, int>> ones;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < t; ++j)
                    if (a(i, j).real() != 0.0) ones.emplace_back(i, j);
            rs.shuffle(ones);
            for (const auto& [i, j] : ones) {
                if (evals >= budget) break;
                a(i, j) = 0.0;
                const bool cheap_ok = arma::accu(arma::abs(a.row(i))) != 0.0 &&
                                      arma::accu(arma::abs(a.col(j))) != 0.0 &&
                                      block_support_ok(a, i / l, l) &&
                                      numeric_rank(a.rows((i / l) * l, (i / l + 1) * l - 1)) == l;
                bool keep_removed = false;
                if (cheap_ok) {
                    ++evals;
                    keep_removed = probe_valid(a, dims, rs);
                }
                if (keep_removed) {
                    changed = true;
                } else {
                    a(i, j) = 1.0;
                }
            }
        }

        const long long ones = count_ones(a);
        if (ones < best.ones) {
            best.a = a;
            best.ones = ones;
            best.valid = true;
        }
    }

    if (!best.valid) {
        best.ones = 0;
        best.iterations = evals;
        return best;
    }

    // Re-confirm the winner with independent channels.
    const Verdict final_check = validate_combiner(best.a, dims, derive(rng, 0xF1A1u), 3);
    evals += 3;
    best.valid = final_check.valid;
    best.sum_modules = std::max<long long>(best.ones - t, 0);
    best.iterations = evals;
    return best;
}

FractionReport valid_fraction(const Dims& dims, double ones_fraction, int trials, const RngSpec& rng) {
    require_square(dims);
    if (trials < 1) throw invalid_input("valid_fraction: trials must be >= 1");
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
        const CMatrix a = random_sparse_a(dims, ones_fraction, derive(rng, 2 * static_cast<std::uint64_t>(i)));
        const Verdict v = validate_combiner(a, dims, derive(rng, 2 * static_cast<std::uint64_t>(i) + 1), 1);
        if (v.valid) ++ok;
    }
    FractionReport rep;
    rep.trials = trials;
    rep.fraction_valid = static_cast<double>(ok) / trials;
    rep.std_error = std::sqrt(rep.fraction_valid * (1.0 - rep.fraction_valid) / trials);
    return rep;
}

}  // namespace waxkit
