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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "waxkit/linalg.hpp"
#include "waxkit/validity.hpp"
#include "waxkit/wax.hpp"

using namespace waxkit;

namespace {

void place_eye(arma::mat& a, int r0, int c0, int n) {
    for (int i = 0; i < n; ++i) a(r0 + i, c0 + i) = 1.0;
}

/// The 100x61 hand-designed 0/1 combiner: an identity on top of a nested
/// cascade of shifted identities, 158 ones in total.
CMatrix handcrafted_sparse_combiner() {
    arma::mat a(100, 61, arma::fill::zeros);
    place_eye(a, 0, 0, 61);
    place_eye(a, 61, 0, 39);   // bottom block, left identity
    place_eye(a, 61, 39, 22);  // nested: rows 61..82 carry I_22 at col 39
    place_eye(a, 83, 39, 17);  // deeper: I_17 at col 39
    place_eye(a, 83, 56, 5);   // I_5 three times at col 56
    place_eye(a, 88, 56, 5);
    place_eye(a, 93, 56, 5);
    // final two rows: [I_2 I_2 0]
    place_eye(a, 98, 56, 2);
    place_eye(a, 98, 58, 2);
    return CMatrix(a, arma::mat(100, 61, arma::fill::zeros));
}

long long ones_of(const CMatrix& a) {
    long long n = 0;
    for (const auto& e : a)
        if (e.real() != 0.0) ++n;
    return n;
}

}  // namespace

TEST_CASE("handcrafted 100x61 combiner is valid and passes both rank conditions") {
    const CMatrix a = handcrafted_sparse_combiner();
    REQUIRE(ones_of(a) == 158);
    const Dims d = Dims::square(100, 10, 4, 61);
    REQUIRE(t_opt(100, 10, 4) == 61);

    const Verdict v = validate_combiner(a, d, RngSpec{314, 0}, 1);
    CHECK(v.valid);
    REQUIRE(!v.residuals.empty());
    CHECK(v.residuals.front() <= kWaxResidualTol);

    CHECK(check_block_rank(a, d, 300).pass);
    CHECK(check_row_rank(a, d, 300).pass);
}

TEST_CASE("repeating a panel block beyond the repetition cap invalidates") {
    // k=5, l=2: a block may appear at most once.
    const Dims d = Dims::square(8, 5, 2, 5);
    CMatrix a = sample_gaussian(RngSpec{41, 0}, 8, 5);
    a.rows(2, 3) = a.rows(0, 1);
    const Verdict v = validate_combiner(a, d, RngSpec{41, 1}, 1);
    CHECK(!v.valid);
    REQUIRE(v.failed_condition.has_value());
    CHECK(*v.failed_condition == "block-rank");
}

TEST_CASE("random dense combiners validate at the minimum feasible t") {
    const Dims d = Dims::square(12, 4, 2, 7);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const CMatrix a = sample_gaussian(RngSpec{600 + s, 0}, 12, 7);
        const Verdict v = validate_combiner(a, d, RngSpec{600 + s, 1}, 1);
        CHECK(v.valid);
        // Necessity: a valid combiner passes both subset conditions.
        CHECK(check_block_rank(a, d).pass);
        CHECK(check_row_rank(a, d).pass);
    }
}

TEST_CASE("one validating channel predicts twenty more") {
    const Dims d = Dims::square(12, 4, 2, 7);
    const CMatrix a = sample_gaussian(RngSpec{77, 0}, 12, 7);
    REQUIRE(validate_combiner(a, d, RngSpec{77, 1}, 1).valid);
    const Verdict v = validate_combiner(a, d, RngSpec{77, 2}, 20);
    CHECK(v.valid);
    for (double r : v.residuals) CHECK(r <= kWaxResidualTol);
}

TEST_CASE("validate_combiner rejects dims below the existence bound") {
    const Dims d = Dims::square(12, 4, 2, 5);
    const CMatrix a = sample_gaussian(RngSpec{9, 0}, 12, 5);
    CHECK_THROWS_AS(validate_combiner(a, d, RngSpec{9, 1}, 1), precondition_error);
}

TEST_CASE("check_block_rank flags an all-zero row at subset size one") {
    const Dims d = Dims::square(8, 5, 2, 5);
    CMatrix a = sample_gaussian(RngSpec{13, 0}, 8, 5);
    a.row(3).zeros();
    const SubsetCheck c = check_block_rank(a, d);
    CHECK(!c.pass);
    REQUIRE(c.witness_blocks.size() == 1);
    CHECK(c.witness_blocks[0] == 1);
    CHECK(c.observed_rank < c.required_rank);
}

TEST_CASE("check_block_rank accepts the identity combiner") {
    const Dims d = Dims::square(8, 3, 2, 8);
    CHECK(check_block_rank(arma::eye<CMatrix>(8, 8), d).pass);
}

TEST_CASE("check_row_rank catches a row repeated across blocks") {
    // k=5, l=2: two blocks sharing one row already violate the bound.
    const Dims d = Dims::square(8, 5, 2, 5);
    CMatrix a = sample_gaussian(RngSpec{15, 0}, 8, 5);
    a.row(4) = a.row(0);  // block 2 row 0 equals block 0 row 0
    const SubsetCheck c = check_row_rank(a, d);
    CHECK(!c.pass);
    CHECK(c.observed_rank == 1);
}

TEST_CASE("check_row_rank passes generic combiners") {
    const Dims d = Dims::square(8, 5, 2, 5);
    CHECK(check_row_rank(sample_gaussian(RngSpec{16, 0}, 8, 5), d).pass);
}

TEST_CASE("ones_lower_bound reproduces the reference table cells") {
    CHECK(ones_lower_bound(60, 7, 6, 9).min_ones == 66);
    CHECK(ones_lower_bound(60, 3, 2, 21).min_ones == 78);
    CHECK(ones_lower_bound(60, 6, 3, 31).min_ones == 89);
    CHECK(ones_lower_bound(60, 1, 1, 1).min_ones == 60);
}

TEST_CASE("ones_lower_bound: equal outputs and users removes the repetition cap") {
    const SparsityBound b = ones_lower_bound(60, 4, 4, 8);
    CHECK(b.r_max_unbounded);
    CHECK(b.q == 1);
    CHECK(b.min_ones == 60);
}

TEST_CASE("ones_lower_bound across one user column, frozen arithmetic") {
    // k = 7, t at the minimum feasible value for each l. The bound is not
    // monotone in l: the t term dominates until the repetition cap jumps.
    const long long want[6] = {68, 77, 85, 68, 66, 66};
    for (int l = 1; l <= 6; ++l) {
        const long long t = t_opt(60, 7, l);
        const SparsityBound b = ones_lower_bound(60, 7, l, t);
        CHECK(b.min_ones == want[l - 1]);
        CHECK(b.min_ones >= 60);  // never below one 1 per row
    }
}

TEST_CASE("repetition cap arithmetic") {
    CHECK(ones_lower_bound(60, 7, 6, 9).r_max == 6);
    CHECK(ones_lower_bound(60, 3, 2, 21).r_max == 2);
    CHECK(ones_lower_bound(60, 7, 5, 18).r_max == 3);
}

TEST_CASE("rank_profile_cap: empty selections leave the profile unconstrained") {
    const Dims d = Dims::square(4, 3, 1, 3);
    const RankProfileCap c = rank_profile_cap(CMatrix(0, 3), d, {0, 0, 0, 0}, 3);
    CHECK(c.b_s == 3);
    CHECK(c.required_rank == 0);
    CHECK(c.rank_ok);
}

TEST_CASE("rank_profile_cap: two generic rows from two blocks") {
    const Dims d = Dims::square(2, 3, 1, 3);
    const CMatrix sub = sample_gaussian(RngSpec{21, 0}, 2, 3);
    const RankProfileCap c = rank_profile_cap(sub, d, {1, 1}, 3);
    CHECK(c.b_s == 1);
    CHECK(c.required_rank == 2);
    CHECK(c.rank_ok);
}

TEST_CASE("rank_profile_cap: four single rows over two users close the profile") {
    const Dims d = Dims::square(4, 2, 1, 2);
    const CMatrix sub = sample_gaussian(RngSpec{22, 0}, 4, 2);
    const RankProfileCap c = rank_profile_cap(sub, d, {1, 1, 1, 1}, 2);
    CHECK(c.b_s == 0);
    CHECK(c.required_rank == 2);
}

TEST_CASE("rank_profile_cap agrees with the stacked null-space oracle at l = 1") {
    for (int k = 1; k <= 4; ++k) {
        for (int p = 1; p <= 4; ++p) {
            const Dims d = Dims::square(p, k, 1, std::max(k, 2));
            for (int mask = 0; mask < (1 << p); ++mask) {
                std::vector<int> alloc(p, 0);
                int r = 0;
                for (int i = 0; i < p; ++i)
                    if (mask & (1 << i)) alloc[i] = 1, ++r;
                const std::uint64_t salt = static_cast<std::uint64_t>(k * 1000 + p * 100 + mask);
                const CMatrix sub =
                    r > 0 ? sample_gaussian(RngSpec{33, salt}, r, d.t) : CMatrix(0, d.t);
                const RankProfileCap c = rank_profile_cap(sub, d, alloc, k);
                // Generic single rows: the joint null space loses one
                // dimension per selected row.
                CHECK(c.b_s == std::max(k - r, 0));
            }
        }
    }
}

TEST_CASE("rank_profile_cap enforces its enumeration budget") {
    const Dims d = Dims::square(13, 2, 1, 2);
    const CMatrix sub = sample_gaussian(RngSpec{5, 0}, 13, 2);
    CHECK_THROWS_AS(rank_profile_cap(sub, d, std::vector<int>(13, 1), 2), budget_error);
}

TEST_CASE("profile requirement never contradicts the row-rank bound") {
    // Single rows from distinct blocks at l = 1: the profile requirement is
    // min(r, k), never above the row-rank threshold floor(r(k-1)/k) + 1, so
    // a selection failing the profile bound also fails the row-rank bound.
    RandomStream rs(RngSpec{67, 0});
    for (int inst = 0; inst < 100; ++inst) {
        const int k = 2 + static_cast<int>(rs.below(3));
        const int p = 1 + static_cast<int>(rs.below(4));
        const int r = 1 + static_cast<int>(rs.below(p));
        const Dims d = Dims::square(p, k, 1, std::max(k, 2));
        std::vector<int> alloc(p, 0);
        for (int i = 0; i < r; ++i) alloc[i] = 1;
        const CMatrix sub = sample_gaussian(RngSpec{68, static_cast<std::uint64_t>(inst)}, r, d.t);
        const RankProfileCap c = rank_profile_cap(sub, d, alloc, k);
        const long long lemma5_min = static_cast<long long>(r) * (k - 1) / k + 1;
        CHECK(c.required_rank <= lemma5_min);
        if (r <= k) CHECK(c.required_rank == lemma5_min);
        const int rank = numeric_rank(sub);
        if (rank < c.required_rank) CHECK(rank < lemma5_min);
    }
}
