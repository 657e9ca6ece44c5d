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

#include "waxkit/linalg.hpp"

#include <limits>

namespace waxkit {

double rank_rel_tol(int rows, int cols) {
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
}

int numeric_rank(const CMatrix& m, double rel_tol) {
    if (m.n_elem == 0) throw dim_error("numeric_rank of an empty matrix");
    if (!m.is_finite()) throw invalid_input("numeric_rank: non-finite entries");
    if (rel_tol < 0.0) rel_tol = rank_rel_tol(m.n_rows, m.n_cols);
    arma::vec s;
    if (!arma::svd(s, m)) throw std::runtime_error("numeric_rank: SVD failed to converge");
    const double smax = s.empty() ? 0.0 : s.max();
    return static_cast<int>(arma::sum(s > rel_tol * smax));
}

CMatrix null_basis(const CMatrix& m, double rel_tol) {
    if (m.n_elem == 0) throw dim_error("null_basis of an empty matrix");
    if (!m.is_finite()) throw invalid_input("null_basis: non-finite entries");
    if (rel_tol < 0.0) rel_tol = rank_rel_tol(m.n_rows, m.n_cols);
    CMatrix u, v;
    arma::vec s;
    if (!arma::svd(u, s, v, m, "dc")) throw std::runtime_error("null_basis: SVD failed to converge");
    const double smax = s.empty() ? 0.0 : s.max();
    // v has n_cols columns; s has min(rows, cols) entries, descending.
    const int rank = static_cast<int>(arma::sum(s > rel_tol * smax));
    const int n = static_cast<int>(m.n_cols);
    if (rank >= n) return CMatrix(n, 0);
    return v.cols(rank, n - 1);
}

double cond2(const CMatrix& m) {
    arma::vec s;
    if (!arma::svd(s, m)) return std::numeric_limits<double>::infinity();
    if (s.empty() || s.min() == 0.0) return std::numeric_limits<double>::infinity();
    return s.max() / s.min();
}

}  // namespace waxkit
