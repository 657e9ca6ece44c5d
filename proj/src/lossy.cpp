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

#include "waxkit/lossy.hpp"

#include <algorithm>
#include <cmath>

#include "waxkit/linalg.hpp"
#include "waxkit/wax.hpp"

namespace waxkit {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

double logdet_capacity(const CMatrix& h_eff, double snr) {
    const arma::uword k = h_eff.n_cols;
    CMatrix gram = arma::eye<CMatrix>(k, k) + snr * (h_eff.t() * h_eff);
    const arma::cx_double ld = arma::log_det(gram);
    return ld.real() / kLog2;
}

RateReport make_report(double i_y, double i_z, double snr, const char* method) {
    RateReport r;
    r.i_lossless = i_y;
    r.i_achieved = i_z;
    r.relative = i_y > 0.0 ? 100.0 * i_z / i_y : 0.0;
    r.method = method;
    r.snr = snr;
    return r;
}

}  // namespace

double mutual_info_y(const CMatrix& h, double snr) {
    if (!h.is_finite()) throw invalid_input("mutual_info_y: non-finite channel");
    if (!(snr > 0.0)) throw invalid_input("mutual_info_y: snr must be positive");
    return logdet_capacity(h, snr);
}

double mutual_info_z(const CMatrix& h, const CMatrix& a, const BlockDiag& w, double snr) {
    if (!h.is_finite() || !a.is_finite()) throw invalid_input("mutual_info_z: non-finite input");
    if (!(snr > 0.0)) throw invalid_input("mutual_info_z: snr must be positive");
    if (static_cast<int>(a.n_rows) != w.dim()) throw dim_error("mutual_info_z: combiner rows do not match panels");
    if (a.n_rows != h.n_rows) throw dim_error("mutual_info_z: channel rows do not match combiner");

    // F = A^H W^H maps the array onto the CPU inputs; noise there has
    // covariance F F^H. W A is assembled panel by panel.
    const int l = w.block_size();
    CMatrix wa(a.n_rows, a.n_cols);
    for (int p = 0; p < w.count(); ++p)
        wa.rows(p * l, (p + 1) * l - 1) = w.blocks[p] * a.rows(p * l, (p + 1) * l - 1);
    const CMatrix f = wa.t();
    const double fnorm = arma::norm(f, "fro");
    if (fnorm == 0.0) return 0.0;

    arma::vec lam;
    CMatrix u;
    arma::eig_sym(lam, u, CMatrix(f * f.t()));
    const double lmax = lam.max();
    const double tol = rank_rel_tol(static_cast<int>(f.n_rows), static_cast<int>(f.n_cols));
    const double cut = tol * tol * lmax;

    // Whiten on the retained row space: rows lam^{-1/2} u^H (F H).
    const CMatrix g = f * h;
    std::vector<arma::uword> keep;
    for (arma::uword i = 0; i < lam.n_elem; ++i)
        if (lam(i) > cut) keep.push_back(i);
    if (keep.empty()) return 0.0;
    CMatrix h_eff(keep.size(), h.n_cols);
    for (std::size_t r = 0; r < keep.size(); ++r)
        h_eff.row(r) = (u.col(keep[r]).t() * g) / std::sqrt(lam(keep[r]));
    return logdet_capacity(h_eff, snr);
}

ApproxMf approx_mf(const CMatrix& h, const CMatrix& a, const Dims& dims, double snr) {
    require_square(dims);
    const int l = dims.l, t = dims.t, k = dims.k, m = dims.m;
    if (l > k) throw precondition_error("approx_mf: requires l <= k");
    const int p = m / l;
    for (int pp = 0; pp < p; ++pp)
        if (numeric_rank(h.rows(pp * l, (pp + 1) * l - 1)) < l)
            throw precondition_error("approx_mf: channel panel is rank deficient");

    const SystemMatrix sys = build_system(h, a, dims);
    arma::vec lam;
    CMatrix vecs;
    arma::eig_sym(lam, vecs, CMatrix(sys.b.t() * sys.b));  // ascending

    for (int cand = 0; cand < 5 && cand < static_cast<int>(vecs.n_cols); ++cand) {
        const arma::cx_vec u = vecs.col(cand);
        BlockDiag w;
        w.blocks.reserve(p);
        bool ok = true;
        for (int pp = 0; pp < p; ++pp) {
            const CMatrix what = arma::reshape(u.subvec(sys.tk + pp * l * l, sys.tk + (pp + 1) * l * l - 1), l, l);
            if (cond2(what) >= kBlockCondLimit) {
                ok = false;
                break;
            }
            w.blocks.push_back(arma::inv(what));
        }
        if (!ok) continue;

        ApproxMf out;
        out.w = std::move(w);
        out.x_hat = arma::reshape(u.head(sys.tk), t, k);
        const double i_y = mutual_info_y(h, snr);
        const double i_z = mutual_info_z(h, a, out.w, snr);
        out.report = make_report(i_y, i_z, snr, "min-norm");
        return out;
    }
    throw degenerate_error("approx_mf: every candidate eigenvector yields a singular block");
}

PanelSelection select_panels(const CMatrix& h, const Dims& dims, int t) {
    require_square(dims);
    if (t < dims.k) throw precondition_error("select_panels: requires t >= k");
    if (static_cast<int>(h.n_rows) != dims.m || static_cast<int>(h.n_cols) != dims.k)
        throw dim_error("select_panels: channel shape does not match dims");
    const int p = dims.m / dims.l;
    const long long l = dims.l, k = dims.k;

    int keep = p;
    if (l < k) {
        // Largest p' with p' * l * (k - l) < t * k.
        keep = static_cast<int>(std::min<long long>(p, (static_cast<long long>(t) * k - 1) / (l * (k - l))));
    }
    if (keep < 1) throw precondition_error("select_panels: no panel count satisfies the existence bound");

    std::vector<std::pair<double, int>> norms(p);
    for (int pp = 0; pp < p; ++pp)
        norms[pp] = {arma::norm(CMatrix(h.rows(pp * dims.l, (pp + 1) * dims.l - 1)), "fro"), pp};
    std::stable_sort(norms.begin(), norms.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });

    PanelSelection sel;
    for (int i = 0; i < keep; ++i) sel.panels.push_back(norms[i].second);
    std::sort(sel.panels.begin(), sel.panels.end());
    sel.reduced = Dims::square(keep * dims.l, dims.k, dims.l, t);
    return sel;
}

std::pair<BlockDiag, RateReport> refine_rate(const CMatrix& h, const CMatrix& a, const Dims& dims,
                                             double snr, const BlockDiag& w0, int eval_budget,
                                             const RngSpec& rng) {
    require_square(dims);
    if (w0.dim() != dims.m || w0.block_size() != dims.l)
        throw dim_error("refine_rate: starting blocks do not match dims");

    const double i_y = mutual_info_y(h, snr);
    BlockDiag best = w0;
    double f_best = mutual_info_z(h, a, best, snr);
    int evals = 1;

    // (1+1) evolution strategy with multiplicative step control; only
    // improvements are accepted, so the result cannot fall below the start.
    RandomStream rs(rng);
    double wnorm = arma::norm(best.dense(), "fro");
    if (wnorm == 0.0) wnorm = 1.0;
    double step = 0.25;
    const int p = best.count(), l = best.block_size();

    while (evals < eval_budget) {
        BlockDiag cand = best;
        double dnorm2 = 0.0;
        std::vector<CMatrix> delta(p);
        for (int pp = 0; pp < p; ++pp) {
            delta[pp].set_size(l, l);
            for (auto& e : delta[pp]) e = rs.gaussian_cx();
            dnorm2 += arma::accu(arma::square(arma::abs(delta[pp])));
        }
        const double scale = step * wnorm / std::sqrt(dnorm2);
        for (int pp = 0; pp < p; ++pp) cand.blocks[pp] += scale * delta[pp];

        const double f_cand = mutual_info_z(h, a, cand, snr);
        ++evals;
        if (f_cand > f_best) {
            best = std::move(cand);
            f_best = f_cand;
            wnorm = arma::norm(best.dense(), "fro");
            step = std::min(step * 1.6, 1.0);
        } else {
            step = std::max(step * 0.96, 1e-5);
        }
    }
    return {best, make_report(i_y, f_best, snr, "refined")};
}

}  // namespace waxkit
