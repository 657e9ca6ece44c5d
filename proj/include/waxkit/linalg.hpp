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

#ifndef WAXKIT_LINALG_HPP
#define WAXKIT_LINALG_HPP

#include "waxkit/types.hpp"

namespace waxkit {

/// Relative singular-value cutoff used repo-wide: max(rows, cols) * eps.
double rank_rel_tol(int rows, int cols);

/// Number of singular values above rel_tol * sigma_max.
///
/// rel_tol < 0 selects the default cutoff. The zero matrix has rank 0;
/// non-finite input raises invalid_input.
int numeric_rank(const CMatrix& m, double rel_tol = -1.0);

/// Right null space of m: singular vectors with sigma <= rel_tol * sigma_max,
/// as columns. Empty matrix (cols x 0) when m has full column rank.
CMatrix null_basis(const CMatrix& m, double rel_tol = -1.0);

/// Two-norm condition number estimate via singular values; infinity for a
/// numerically singular matrix.
double cond2(const CMatrix& m);

}  // namespace waxkit

#endif  // WAXKIT_LINALG_HPP
