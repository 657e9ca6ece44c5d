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

#include "waxkit/wax.hpp"

#include "waxkit/linalg.hpp"

namespace waxkit {

namespace {

long long floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

bool satisfies_existence(long long m, long long k, long long l, long long t) {
    return t * k > m * (k - l) && t >= k;
}

long long t_opt(long long m, long long k, long long l) {
    return std::max(floordiv(m * (k - l), k) + 1, k);
}

arma::sp_mat SystemMatrix::selection_dense(int m) const {
    arma::sp_mat s(static_cast<arma::uword>(m) * m, psel_rows.n_elem);
    for (arma::uword c = 0; c < psel_rows.n_elem; ++c) s(psel_rows(c), c) = 1.0;
    return s;
}

CMatrix expand_combiner(const CMatrix& a_tilde, const Dims& dims) {
    require_expandable(dims);
    if (static_cast<int>(a_tilde.n_rows) != dims.m)
        throw dim_error("expand_combiner: combiner must have one row per antenna");
    const int l = dims.l, n = dims.n, m = dims.m;
    const int reps = l / n;
    const int superblocks = m / l;
    CMatrix out(static_cast<arma::uword>(m) * reps, a_tilde.n_cols);
    for (int q = 0; q < superblocks; ++q) {
        const auto block = a_tilde.rows(q * l, (q + 1) * l - 1);
        for (int r = 0; r < reps; ++r) {
            const int base = q * l * reps + r * l;
            out.rows(base, base + l - 1) = block;
        }
    }
    return out;
}

SystemMatrix build_system(const CMatrix& h, const CMatrix& a, const Dims& dims) {
    require_square(dims);
    const int m = dims.m, k = dims.k, l = dims.l, t = dims.t;
    if (static_cast<int>(h.n_rows) != m || static_cast<int>(h.n_cols) != k)
        throw dim_error("build_system: channel shape does not match dims");
    if (static_cast<int>(a.n_rows) != m || static_cast<int>(a.n_cols) != t)
        throw dim_error("build_system: combiner shape does not match dims");

    const int p = m / l;
    SystemMatrix sys;
    sys.tk = t * k;
    sys.ml = m * l;
    sys.b.zeros(static_cast<arma::uword>(m) * k, sys.tk + sys.ml);
    sys.psel_rows.set_size(sys.ml);

    // First tk columns: I_k (x) A.
    for (int kk = 0; kk < k; ++kk)
        sys.b.submat(kk * m, kk * t, (kk + 1) * m - 1, (kk + 1) * t - 1) = a;

    // Remaining ml columns: -(H^T (x) I_m) * S, filled column by column.
    // Unknown (i, j) of block p sits at dense position (p*l+i, p*l+j), i.e.
    // vec index (p*l+j)*m + p*l+i, and multiplies row p*l+j of H in every
    // user equation.
    for (int pp = 0; pp < p; ++pp) {
        for (int j = 0; j < l; ++j) {
            for (int i = 0; i < l; ++i) {
                const int col = pp * l * l + j * l + i;
                sys.psel_rows(col) = static_cast<arma::uword>(pp * l + j) * m + pp * l + i;
                for (int kk = 0; kk < k; ++kk)
                    sys.b(static_cast<arma::uword>(kk) * m + pp * l + i, sys.tk + col) = -h(pp * l + j, kk);
            }
        }
    }
    return sys;
}

WaxResult wax_decompose(const CMatrix& h, const CMatrix& a, const Dims& dims, const RngSpec& rng,
                        int max_attempts) {
    require_square(dims);
    if (!h.is_finite() || !a.is_finite()) throw invalid_input("wax_decompose: non-finite input");
    const int m = dims.m, k = dims.k, l = dims.l, t = dims.t;
    if (static_cast<int>(h.n_rows) != m || static_cast<int>(h.n_cols) != k)
        throw dim_error("wax_decompose: channel shape does not match dims");
    if (static_cast<int>(a.n_rows) != m || static_cast<int>(a.n_cols) != t)
        throw dim_error("wax_decompose: combiner shape does not match dims");
    const int p = m / l;

    for (int pp = 0; pp < p; ++pp) {
        if (numeric_rank(h.rows(pp * l, (pp + 1) * l - 1)) < l)
            throw precondition_error("wax_decompose: channel panel " + std::to_string(pp) +
                                     " is rank deficient");
    }

    const SystemMatrix sys = build_system(h, a, dims);
    const CMatrix basis = null_basis(sys.b);

    WaxResult res;
    res.nullspace_dim = static_cast<int>(basis.n_cols);
    if (basis.n_cols == 0) return res;

    const double h_norm = arma::norm(h, "fro");
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        res.attempts = attempt;
        RandomStream rs(derive(rng, static_cast<std::uint64_t>(attempt)));
        arma::cx_vec coeff(basis.n_cols);
        for (auto& c : coeff) c = rs.gaussian_cx();
        arma::cx_vec u = basis * coeff;
        const double un = arma::norm(u);
        if (un == 0.0) continue;
        u /= un;

        const CMatrix xhat = arma::reshape(u.head(sys.tk), t, k);
        BlockDiag w;
        w.blocks.reserve(p);
        bool blocks_ok = true;
        for (int pp = 0; pp < p; ++pp) {
            const CMatrix what = arma::reshape(u.subvec(sys.tk + pp * l * l, sys.tk + (pp + 1) * l * l - 1), l, l);
            if (cond2(what) >= kBlockCondLimit) {
                blocks_ok = false;
                break;
            }
            w.blocks.push_back(arma::inv(what));
        }
        if (!blocks_ok) continue;

        // W (A X) panel by panel; success means it reproduces the channel.
        double err2 = 0.0;
        const CMatrix ax = a * xhat;
        for (int pp = 0; pp < p; ++pp) {
            const CMatrix diff = w.blocks[pp] * ax.rows(pp * l, (pp + 1) * l - 1) - h.rows(pp * l, (pp + 1) * l - 1);
            err2 += arma::accu(arma::square(arma::abs(diff)));
        }
        const double rel = std::sqrt(err2) / h_norm;
        res.residual = std::min(res.residual, rel);
        if (rel <= kWaxResidualTol) {
            res.success = true;
            res.w = std::move(w);
            res.x = xhat;
            res.residual = rel;
            return res;
        }
    }
    return res;
}

PlanResult plan_dimensions(std::optional<long long> m, long long k, std::optional<long long> l,
                           std::optional<long long> t) {
    PlanResult out;
    const int absent = (!m ? 1 : 0) + (!l ? 1 : 0) + (!t ? 1 : 0);
    if (absent != 1) throw invalid_input("plan_dimensions: exactly one of m, l, t must be absent");
    if (k < 1 || (m && *m < 1) || (l && *l < 1) || (t && *t < 1))
        throw invalid_input("plan_dimensions: arguments must be positive");

    if (!t) {
        out.t_opt = t_opt(*m, k, *l);
        return out;
    }
    if (!m) {
        if (*t < k) {
            out.feasible = false;
            out.note = "t below the user count admits no antenna count";
            return out;
        }
        if (*l >= k) {
            out.m_unbounded = true;
            return out;
        }
        out.m_max = floordiv(*t * k - 1, k - *l);
        return out;
    }
    // l query: smallest divisor of m satisfying the existence bound.
    if (*t < k) {
        out.feasible = false;
        out.note = "t below the user count admits no panel output count";
        return out;
    }
    for (long long lp = 1; lp <= k; ++lp) {
        if (*m % lp != 0) continue;
        if (satisfies_existence(*m, k, lp, *t)) {
            out.l_opt = lp;
            return out;
        }
    }
    out.feasible = false;
    out.note = "no divisor of m up to k satisfies the existence bound";
    return out;
}

arma::cx_vec apply_processing(const arma::cx_vec& y, const BlockDiag& w, const CMatrix& a,
                              const CMatrix& x) {
    if (static_cast<int>(y.n_elem) != w.dim()) throw dim_error("apply_processing: y does not match panels");
    if (static_cast<int>(a.n_rows) != w.dim()) throw dim_error("apply_processing: combiner rows do not match panels");
    if (a.n_cols != x.n_rows) throw dim_error("apply_processing: combiner/CPU shape mismatch");
    const arma::cx_vec panel_out = w.apply_adjoint(y);
    const arma::cx_vec combined = a.t() * panel_out;
    return x.t() * combined;
}

}  // namespace waxkit
