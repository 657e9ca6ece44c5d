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

#ifndef WAXKIT_RNG_HPP
#define WAXKIT_RNG_HPP

#include <array>
#include <cstdint>

#include "waxkit/types.hpp"

namespace waxkit {

/// Identifies one reproducible random stream.
///
/// The repository generator is Philox4x32-10, a counter-based block cipher
/// style generator: block i of stream (seed, stream) is a pure function of
/// (seed, stream, i), so the raw 32-bit output stream is bit-reproducible
/// across platforms and safe to split across threads. Gaussian variates are
/// produced from that stream by a Box-Muller transform; their last-ulp
/// agreement across platforms follows libm, which is why downstream
/// assertions are tolerance based.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// Deterministically derive a child stream, e.g. one per Monte Carlo trial.
RngSpec derive(const RngSpec& parent, std::uint64_t salt);

/// Philox4x32-10 block function: 128-bit counter -> 128 output bits.
std::array<std::uint32_t, 4> philox_block(const RngSpec& spec, std::uint64_t counter);

/// Sequential view of one Philox stream.
class RandomStream {
  public:
    explicit RandomStream(RngSpec spec) : spec_(spec) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal pair via Box-Muller.
    std::array<double, 2> gaussian_pair();

    /// One real standard normal (caches the spare Box-Muller variate).
    double gaussian();

    /// Circularly-symmetric complex Gaussian, unit variance (CN(0,1)).
    cx gaussian_cx();

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    /// Fisher-Yates shuffle.
    template <typename Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    const RngSpec& spec() const { return spec_; }

  private:
    RngSpec spec_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;  // empty
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// rows-by-cols matrix of IID CN(0,1) entries, a pure function of
/// (seed, stream, rows, cols): entry (i, j) is derived from Philox block
/// j*rows + i, so repeated calls are bit-identical.
CMatrix sample_gaussian(const RngSpec& rng, int rows, int cols);

}  // namespace waxkit

#endif  // WAXKIT_RNG_HPP
