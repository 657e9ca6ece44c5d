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

#ifndef WAXKIT_WAX_HPP
#define WAXKIT_WAX_HPP

#include <optional>

#include "waxkit/rng.hpp"
#include "waxkit/types.hpp"

namespace waxkit {

/// Relative Frobenius residual below which a decomposition counts as exact.
constexpr double kWaxResidualTol = 1e-8;

/// Condition-number ceiling for an invertible per-panel block.
constexpr double kBlockCondLimit = 1e10;

/// True when (m, k, l, t) admits the decomposition for randomly chosen
/// combiner and channel: t*k > m*(k-l) and t >= k.
bool satisfies_existence(long long m, long long k, long long l, long long t);
inline bool satisfies_existence(const Dims& d) { return satisfies_existence(d.m, d.k, d.l, d.t); }

/// Minimum integer t admitting the decomposition for given (m, k, l).
long long t_opt(long long m, long long k, long long l);

/// Vectorized linear system b * u = 0 with u = [vec(X); vec(W_1); ...; vec(W_P)].
///
/// b = [I_k (x) A | -(H^T (x) I_m) * S] where S is the m^2-by-(m*l) 0/1
/// selection matrix mapping the permitted block-diagonal entries of vec(W)
/// into vec of the dense m-by-m pattern. S has exactly one 1 per column and
/// is stored as that row index.
struct SystemMatrix {
    CMatrix b;             ///< mk x (tk + ml)
    arma::uvec psel_rows;  ///< selection-matrix row index per column, length ml
    int tk = 0;
    int ml = 0;

    arma::subview<cx> b1() { return b.cols(0, tk - 1); }
    arma::subview<cx> b2() { return b.cols(tk, tk + ml - 1); }
    CMatrix b1_copy() const { return b.cols(0, tk - 1); }
    CMatrix b2_copy() const { return b.cols(tk, tk + ml - 1); }

    /// Dense m^2 x ml selection matrix (test-sized instances only).
    arma::sp_mat selection_dense(int m) const;
};

/// One decomposition outcome. `success` implies residual <= kWaxResidualTol
/// and every w block invertible; otherwise the diagnostics describe the
/// failed search.
struct WaxResult {
    bool success = false;
    BlockDiag w;        ///< panel processing blocks, l x l each
    CMatrix x;          ///< t x k CPU matrix
    double residual = std::numeric_limits<double>::infinity();
    int nullspace_dim = 0;
    int attempts = 0;
};

/// Row-replication transform lifting a designed m-by-t combiner to the
/// physical (m*l/n)-by-t combiner for panels of n < l antennas. Identity
/// when l == n.
CMatrix expand_combiner(const CMatrix& a_tilde, const Dims& dims);

/// Builds the vectorized system for the square (n == l) layout.
SystemMatrix build_system(const CMatrix& h, const CMatrix& a, const Dims& dims);

/// Computes H = W A X for the square layout.
///
/// The null space of the system matrix is taken from its SVD; a seeded
/// random unit combination of the basis is drawn per attempt, the recovered
/// blocks are inverted when well conditioned, and the attempt is accepted
/// once the relative residual clears kWaxResidualTol. Panels of
/// rank-deficient channel raise precondition_error.
WaxResult wax_decompose(const CMatrix& h, const CMatrix& a, const Dims& dims, const RngSpec& rng,
                        int max_attempts = 10);

/// Feasible-dimension planning. Exactly one of (m, l, t) is absent and is
/// the queried quantity.
struct PlanResult {
    std::optional<long long> t_opt;
    std::optional<long long> l_opt;
    std::optional<long long> m_max;
    bool m_unbounded = false;      ///< l >= k allows arbitrarily many antennas
    bool feasible = true;
    std::string note;
};

PlanResult plan_dimensions(std::optional<long long> m, long long k, std::optional<long long> l,
                           std::optional<long long> t);

/// z = X^H A^H W^H y, evaluated panel-locally first.
arma::cx_vec apply_processing(const arma::cx_vec& y, const BlockDiag& w, const CMatrix& a,
                              const CMatrix& x);

}  // namespace waxkit

#endif  // WAXKIT_WAX_HPP
