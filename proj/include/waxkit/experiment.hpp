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

#ifndef WAXKIT_EXPERIMENT_HPP
#define WAXKIT_EXPERIMENT_HPP

#include <optional>
#include <string>

#include "waxkit/rng.hpp"
#include "waxkit/types.hpp"

namespace waxkit {

/// Sweep axis over an integer range (ones_fraction points are percentages).
struct SweepSpec {
    std::string axis;  ///< "T", "L" or "ones_fraction"
    long long lo = 0;
    long long hi = -1;
};

struct ExperimentConfig {
    Dims dims;
    std::uint64_t seed = 1;
    int trials = 1;
    double snr_db = 10.0;
    std::optional<SweepSpec> sweep;
    std::string out_path;
};

enum class ExperimentKind { Validate, SparseSearch, RateCurve, BoundTable };

ExperimentKind kind_from_string(const std::string& s);

/// Per-row RNG child stream: every CSV row records the stream it used, so a
/// row can be recomputed by calling the underlying operation with the row's
/// parameters and this stream.
RngSpec experiment_stream(std::uint64_t seed, long long point_index, int trial);

struct ExperimentOutcome {
    int rows_total = 0;
    int rows_failed = 0;
};

/// Runs one experiment kind, writing the CSV atomically plus a companion
/// <out>.meta.json recording the exact config and library version. Identical
/// config and seed produce a byte-identical CSV body. Sweep points and
/// trials execute in parallel (capped by WAXKIT_THREADS) on disjoint
/// streams; rows are emitted sorted by sweep coordinate.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, ExperimentKind kind);

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

/// Worker cap: WAXKIT_THREADS when set, hardware concurrency otherwise.
int thread_cap();

}  // namespace waxkit

#endif  // WAXKIT_EXPERIMENT_HPP
