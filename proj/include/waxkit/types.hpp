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

#ifndef WAXKIT_TYPES_HPP
#define WAXKIT_TYPES_HPP

#include <armadillo>
#include <stdexcept>
#include <string>
#include <vector>

namespace waxkit {

/// Dense complex double-precision matrix, the carrier for H, A, W, X, B.
using CMatrix = arma::cx_mat;
using cx = arma::cx_double;

// Error taxonomy. Shape and divisibility violations are dim_error,
// non-finite data is invalid_input, violated mathematical preconditions
// (rank, feasibility bounds) are precondition_error.
struct dim_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// System dimension tuple.
///
/// m antennas serve k users. The antennas are grouped into p = m/n panels of
/// n antennas, each panel produces l outputs, and the combiner feeds t CPU
/// inputs. The square processing layout has n == l; the row-replication
/// transform additionally needs m % l == 0 and l % n == 0.
struct Dims {
    int m = 0;  ///< antennas
    int k = 0;  ///< users
    int l = 0;  ///< outputs per panel
    int n = 0;  ///< antennas per panel
    int t = 0;  ///< CPU inputs

    int p() const { return n > 0 ? m / n : 0; }

    /// Panel count in the square (n == l) layout.
    int panels_square() const { return l > 0 ? m / l : 0; }

    static Dims square(int m, int k, int l, int t) { return Dims{m, k, l, l, t}; }
};

inline void require_positive(const Dims& d) {
    if (d.m < 1 || d.k < 1 || d.l < 1 || d.n < 1 || d.t < 1)
        throw dim_error("all dimensions must be positive");
}

inline void require_panels(const Dims& d) {
    require_positive(d);
    if (d.m % d.n != 0) throw dim_error("antenna count must be divisible by panel size");
}

/// Square-solver layout: n == l and m % l == 0.
inline void require_square(const Dims& d) {
    require_panels(d);
    if (d.n != d.l) throw dim_error("square layout requires n == l");
    if (d.m % d.l != 0) throw dim_error("antenna count must be divisible by outputs per panel");
}

/// Layout accepted by the row-replication transform: m % l == 0, l % n == 0.
inline void require_expandable(const Dims& d) {
    require_panels(d);
    if (d.m % d.l != 0) throw dim_error("antenna count must be divisible by outputs per panel");
    if (d.l % d.n != 0) throw dim_error("outputs per panel must be divisible by panel size");
}

/// Block diagonal matrix held as its p square l-by-l diagonal blocks.
struct BlockDiag {
    std::vector<CMatrix> blocks;

    BlockDiag() = default;
    explicit BlockDiag(std::vector<CMatrix> b) : blocks(std::move(b)) {}

    int count() const { return static_cast<int>(blocks.size()); }
    int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().n_rows); }
    int dim() const { return count() * block_size(); }

    /// Dense expansion; block p occupies rows/cols [p*l, (p+1)*l).
    CMatrix dense() const {
        const int l = block_size();
        const int m = dim();
        CMatrix out(m, m, arma::fill::zeros);
        for (int p = 0; p < count(); ++p)
            out.submat(p * l, p * l, (p + 1) * l - 1, (p + 1) * l - 1) = blocks[p];
        return out;
    }

    /// y -> W^H y applied panel by panel (the physical dataflow).
    arma::cx_vec apply_adjoint(const arma::cx_vec& y) const {
        const int l = block_size();
        if (static_cast<int>(y.n_elem) != dim()) throw dim_error("vector length does not match block structure");
        arma::cx_vec out(dim());
        for (int p = 0; p < count(); ++p)
            out.subvec(p * l, (p + 1) * l - 1) = blocks[p].t() * y.subvec(p * l, (p + 1) * l - 1);
        return out;
    }
};

inline bool all_finite(const CMatrix& m) { return m.is_finite(); }

}  // namespace waxkit

#endif  // WAXKIT_TYPES_HPP
