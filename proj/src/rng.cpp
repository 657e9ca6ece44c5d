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

#include "waxkit/rng.hpp"

#include <cmath>

namespace waxkit {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline void philox_round(std::array<std::uint32_t, 4>& x, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

inline double u53_to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

RngSpec derive(const RngSpec& parent, std::uint64_t salt) {
    return RngSpec{parent.seed, splitmix64(parent.stream * 0x9E3779B97F4A7C15ull + salt + 1)};
}

std::array<std::uint32_t, 4> philox_block(const RngSpec& spec, std::uint64_t counter) {
    std::array<std::uint32_t, 4> x = {
        static_cast<std::uint32_t>(counter),
        static_cast<std::uint32_t>(counter >> 32),
        static_cast<std::uint32_t>(spec.stream),
        static_cast<std::uint32_t>(spec.stream >> 32),
    };
    std::uint32_t k0 = static_cast<std::uint32_t>(spec.seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(spec.seed >> 32);
    for (int r = 0; r < 10; ++r) {
        philox_round(x, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return x;
}

std::uint32_t RandomStream::next_u32() {
    if (buf_pos_ >= 4) {
        buf_ = philox_block(spec_, counter_++);
        buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double RandomStream::uniform() { return u53_to_unit(next_u64()); }

std::array<double, 2> RandomStream::gaussian_pair() {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * M_PI * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

double RandomStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const auto z = gaussian_pair();
    spare_ = z[1];
    has_spare_ = true;
    return z[0];
}

cx RandomStream::gaussian_cx() {
    const auto z = gaussian_pair();
    return cx(z[0] * M_SQRT1_2, z[1] * M_SQRT1_2);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    if (n == 0) throw invalid_input("below(0) is undefined");
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

CMatrix sample_gaussian(const RngSpec& rng, int rows, int cols) {
    if (rows < 1 || cols < 1) throw dim_error("sample_gaussian requires positive dimensions");
    CMatrix out(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const std::uint64_t idx = static_cast<std::uint64_t>(j) * rows + i;
            const auto b = philox_block(rng, idx);
            const double u1 =
                static_cast<double>((((static_cast<std::uint64_t>(b[0]) << 32) | b[1]) >> 11) + 1) * 0x1.0p-53;
            const double u2 = u53_to_unit((static_cast<std::uint64_t>(b[2]) << 32) | b[3]);
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double th = 2.0 * M_PI * u2;
            out(i, j) = cx(r * std::cos(th) * M_SQRT1_2, r * std::sin(th) * M_SQRT1_2);
        }
    }
    return out;
}

}  // namespace waxkit
