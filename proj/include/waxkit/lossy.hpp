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

#ifndef WAXKIT_LOSSY_HPP
#define WAXKIT_LOSSY_HPP

#include <utility>
#include <vector>

#include "waxkit/rng.hpp"
#include "waxkit/types.hpp"

namespace waxkit {

/// Mutual-information figures for one configuration. `relative` is the
/// achieved percentage of the lossless rate; `snr` is the linear transmit
/// power to noise ratio.
struct RateReport {
    double i_lossless = 0.0;  ///< bits
    double i_achieved = 0.0;  ///< bits
    double relative = 0.0;    ///< percent
    std::string method;       ///< wax | min-norm | panel-select | refined
    double snr = 0.0;
};

/// Combiner-output processing produced by the minimum-norm approximation.
struct ApproxMf {
    BlockDiag w;
    CMatrix x_hat;  ///< CPU matrix recovered from the same eigenvector
    RateReport report;
};

/// Panel subset chosen for decomposition on a reduced array.
struct PanelSelection {
    std::vector<int> panels;  ///< kept panel indices, ascending
    Dims reduced;
};

/// Capacity of the raw array: log2 det(I + snr H^H H) bits.
double mutual_info_y(const CMatrix& h, double snr);

/// Rate through the panel/combiner front end F = A^H W^H, with the colored
/// noise whitened on the row space of F (rank-deficient F is truncated at
/// the global rank tolerance). The CPU matrix cannot change this figure and
/// is omitted.
double mutual_info_z(const CMatrix& h, const CMatrix& a, const BlockDiag& w, double snr);

/// Minimum-norm approximate matched filter: the eigenvector of the smallest
/// eigenvalue of B^H B, un-vectorized and block-inverted. Falls back to the
/// next-smallest eigenvectors (up to 5) when a block is ill conditioned.
ApproxMf approx_mf(const CMatrix& h, const CMatrix& a, const Dims& dims, double snr);

/// Keeps the largest panel count satisfying the existence bound at the given
/// t, preferring panels with the largest channel Frobenius norms.
PanelSelection select_panels(const CMatrix& h, const Dims& dims, int t);

/// Derivative-free local ascent of mutual_info_z over the panel blocks,
/// starting from w0. Monotone: the returned rate never falls below the
/// starting rate. Deterministic under rng and capped at eval_budget
/// objective evaluations.
std::pair<BlockDiag, RateReport> refine_rate(const CMatrix& h, const CMatrix& a, const Dims& dims,
                                             double snr, const BlockDiag& w0, int eval_budget,
                                             const RngSpec& rng);

}  // namespace waxkit

#endif  // WAXKIT_LOSSY_HPP
