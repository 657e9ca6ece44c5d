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
#include "waxkit/lossy.hpp"
#include "waxkit/wax.hpp"

using namespace waxkit;
using test::rel_err;

namespace {

BlockDiag identity_blocks(int p, int l) {
    BlockDiag w;
    for (int i = 0; i < p; ++i) w.blocks.push_back(arma::eye<CMatrix>(l, l));
    return w;
}

}  // namespace

TEST_CASE("raw-array rate on reference channels") {
    CHECK(mutual_info_y(CMatrix(6, 3, arma::fill::zeros), 1.0) == doctest::Approx(0.0));
    CHECK(mutual_info_y(arma::eye<CMatrix>(4, 4), 1.0) == doctest::Approx(4.0));
}

TEST_CASE("raw-array rate matches the eigenvalue oracle") {
    const CMatrix h = sample_gaussian(RngSpec{50, 0}, 8, 3);
    const double got = mutual_info_y(h, 10.0);
    arma::vec ev;
    arma::eig_sym(ev, CMatrix(h.t() * h));
    double want = 0.0;
    for (double lam : ev) want += std::log2(1.0 + 10.0 * lam);
    CHECK(std::abs(got - want) < 1e-9);
}

TEST_CASE("rate evaluation rejects bad inputs") {
    CMatrix h(2, 2, arma::fill::ones);
    CHECK_THROWS_AS(mutual_info_y(h, 0.0), invalid_input);
    h(0, 0) = cx(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_THROWS_AS(mutual_info_y(h, 1.0), invalid_input);
}

TEST_CASE("combiner-output rate equals the raw rate for the centralized layout") {
    const CMatrix h = sample_gaussian(RngSpec{51, 0}, 6, 3);
    const double i_y = mutual_info_y(h, 10.0);
    const double i_z = mutual_info_z(h, arma::eye<CMatrix>(6, 6), identity_blocks(6, 1), 10.0);
    CHECK(std::abs(i_y - i_z) < 1e-9);
}

TEST_CASE("an exact decomposition is information-lossless") {
    const Dims d = Dims::square(12, 4, 2, 7);
    const CMatrix h = sample_gaussian(RngSpec{52, 0}, 12, 4);
    const CMatrix a = sample_gaussian(RngSpec{52, 1}, 12, 7);
    const WaxResult r = wax_decompose(h, a, d, RngSpec{52, 2});
    REQUIRE(r.success);
    const double i_y = mutual_info_y(h, 10.0);
    const double i_z = mutual_info_z(h, a, r.w, 10.0);
    CHECK(std::abs(i_z / i_y - 1.0) < 1e-9);
}

TEST_CASE("single-output front end matches the scalar-channel oracle") {
    const int m = 4, k = 2;
    const CMatrix h = sample_gaussian(RngSpec{53, 0}, m, k);
    CMatrix a(m, 1, arma::fill::zeros);
    a(2, 0) = 1.0;  // observe antenna 2 only
    const double got = mutual_info_z(h, a, identity_blocks(m, 1), 5.0);
    const double want = std::log2(1.0 + 5.0 * std::norm(h(2, 0)) + 5.0 * std::norm(h(2, 1)));
    CHECK(std::abs(got - want) < 1e-9);
}

TEST_CASE("all-zero processing carries no information") {
    const CMatrix h = sample_gaussian(RngSpec{54, 0}, 4, 2);
    BlockDiag w;
    w.blocks.assign(2, CMatrix(2, 2, arma::fill::zeros));
    CHECK(mutual_info_z(h, sample_gaussian(RngSpec{54, 1}, 4, 3), w, 10.0) == 0.0);
}

TEST_CASE("data processing never creates information") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const CMatrix h = sample_gaussian(RngSpec{800 + s, 0}, 8, 3);
        const CMatrix a = sample_gaussian(RngSpec{800 + s, 1}, 8, 4);
        BlockDiag w;
        for (int p = 0; p < 4; ++p)
            w.blocks.push_back(sample_gaussian(RngSpec{800 + s, 2 + static_cast<std::uint64_t>(p)}, 2, 2));
        const double i_y = mutual_info_y(h, 10.0);
        const double i_z = mutual_info_z(h, a, w, 10.0);
        CHECK(i_z <= i_y + 1e-9);
    }
}

TEST_CASE("global rescaling of the panel blocks leaves the rate unchanged") {
    const CMatrix h = sample_gaussian(RngSpec{56, 0}, 8, 3);
    const CMatrix a = sample_gaussian(RngSpec{56, 1}, 8, 4);
    BlockDiag w;
    for (int p = 0; p < 4; ++p)
        w.blocks.push_back(sample_gaussian(RngSpec{56, 2 + static_cast<std::uint64_t>(p)}, 2, 2));
    BlockDiag w_scaled = w;
    for (auto& b : w_scaled.blocks) b *= cx(1.0, 2.0);
    const double r1 = mutual_info_z(h, a, w, 10.0);
    const double r2 = mutual_info_z(h, a, w_scaled, 10.0);
    CHECK(std::abs(r1 - r2) < 1e-9);
}

TEST_CASE("minimum-norm processing is lossless at the feasible boundary") {
    const Dims d = Dims::square(12, 4, 2, 7);
    const CMatrix h = sample_gaussian(RngSpec{57, 0}, 12, 4);
    const CMatrix a = sample_gaussian(RngSpec{57, 1}, 12, 7);
    const ApproxMf mf = approx_mf(h, a, d, 10.0);
    CHECK(mf.report.method == "min-norm");
    CHECK(std::abs(mf.report.relative - 100.0) < 1e-6);
    // The same eigenvector reconstructs the channel.
    CHECK(rel_err(CMatrix(mf.w.dense() * a * mf.x_hat), h) <= 1e-6);

    // And the system matrix indeed has a near-null direction.
    const SystemMatrix sys = build_system(h, a, d);
    arma::vec lam;
    arma::eig_sym(lam, CMatrix(sys.b.t() * sys.b));
    CHECK(lam.min() < 1e-10 * lam.max());
}

TEST_CASE("below the bound the minimum-norm rate sits strictly between 0 and lossless") {
    const Dims d = Dims::square(24, 5, 3, 9);
    const CMatrix h = sample_gaussian(RngSpec{58, 0}, 24, 5);
    const CMatrix a = sample_gaussian(RngSpec{58, 1}, 24, 9);
    const ApproxMf mf = approx_mf(h, a, d, 10.0);
    CHECK(mf.report.relative > 0.0);
    CHECK(mf.report.relative < 100.0);

    const auto refined = refine_rate(h, a, d, 10.0, mf.w, 2000, RngSpec{58, 2});
    CHECK(refined.second.relative >= mf.report.relative - 1e-12);
    CHECK(refined.second.relative <= 100.0 + 1e-9);
}

TEST_CASE("approx_mf enforces its preconditions") {
    const Dims d = Dims::square(8, 2, 4, 8);  // l > min(t, k)
    const CMatrix h = sample_gaussian(RngSpec{59, 0}, 8, 2);
    const CMatrix a = sample_gaussian(RngSpec{59, 1}, 8, 8);
    CHECK_THROWS_AS(approx_mf(h, a, d, 10.0), precondition_error);
}

TEST_CASE("select_panels keeps everything at the feasible boundary") {
    const Dims d = Dims::square(24, 5, 3, 10);
    const CMatrix h = sample_gaussian(RngSpec{60, 0}, 24, 5);
    const PanelSelection sel = select_panels(h, d, 10);
    CHECK(sel.panels.size() == 8);
    CHECK(sel.reduced.m == 24);
    CHECK(satisfies_existence(sel.reduced));
}

TEST_CASE("select_panels trims to the provable panel count") {
    const Dims d = Dims::square(24, 5, 3, 8);
    const CMatrix h = sample_gaussian(RngSpec{61, 0}, 24, 5);
    const PanelSelection sel = select_panels(h, d, 8);
    CHECK(sel.panels.size() == 6);
    CHECK(sel.reduced.m == 18);
    CHECK(satisfies_existence(sel.reduced));
}

TEST_CASE("select_panels keeps the strongest panels") {
    const Dims d = Dims::square(4, 2, 1, 2);
    CMatrix h = sample_gaussian(RngSpec{62, 0}, 4, 2);
    h.row(0) *= 10.0;  // panel 0 dominates
    h.row(3) *= 0.01;  // panel 3 weakest
    const PanelSelection sel = select_panels(h, d, 2);
    REQUIRE(sel.panels.size() == 3);
    CHECK(std::find(sel.panels.begin(), sel.panels.end(), 0) != sel.panels.end());
    CHECK(std::find(sel.panels.begin(), sel.panels.end(), 3) == sel.panels.end());
}

TEST_CASE("select_panels requires enough CPU inputs") {
    const Dims d = Dims::square(24, 5, 3, 4);
    const CMatrix h = sample_gaussian(RngSpec{63, 0}, 24, 5);
    CHECK_THROWS_AS(select_panels(h, d, 4), precondition_error);
}

TEST_CASE("refinement from a lossless start goes nowhere") {
    const Dims d = Dims::square(12, 4, 2, 7);
    const CMatrix h = sample_gaussian(RngSpec{64, 0}, 12, 4);
    const CMatrix a = sample_gaussian(RngSpec{64, 1}, 12, 7);
    const WaxResult r = wax_decompose(h, a, d, RngSpec{64, 2});
    REQUIRE(r.success);
    const auto refined = refine_rate(h, a, d, 10.0, r.w, 300, RngSpec{64, 3});
    CHECK(refined.second.relative >= 100.0 - 1e-6);
    CHECK(refined.second.relative <= 100.0 + 1e-9);
}

TEST_CASE("refinement is deterministic under its stream") {
    const Dims d = Dims::square(12, 4, 2, 5);
    const CMatrix h = sample_gaussian(RngSpec{65, 0}, 12, 4);
    const CMatrix a = sample_gaussian(RngSpec{65, 1}, 12, 5);
    const ApproxMf mf = approx_mf(h, a, d, 10.0);
    const auto r1 = refine_rate(h, a, d, 10.0, mf.w, 400, RngSpec{65, 2});
    const auto r2 = refine_rate(h, a, d, 10.0, mf.w, 400, RngSpec{65, 2});
    CHECK(r1.second.i_achieved == r2.second.i_achieved);
}
