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

#ifndef WAXKIT_MATRIX_IO_HPP
#define WAXKIT_MATRIX_IO_HPP

#include <string>

#include "waxkit/types.hpp"
#include "waxkit/wax.hpp"

namespace waxkit {

// Repo-wide matrix wire format:
//   {"rows": r, "cols": c, "data": [[re, im], ...]}   (row-major)
// Writers keep full double precision.

std::string matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const std::string& text);

void save_matrix(const CMatrix& m, const std::string& path);
CMatrix load_matrix(const std::string& path);

/// {"W_blocks": [...], "X": ..., "residual": r, "nullspace_dim": d}
std::string factors_to_json(const WaxResult& r);
void save_factors(const WaxResult& r, const std::string& path);

/// Writes `text` to `path` atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& text);

}  // namespace waxkit

#endif  // WAXKIT_MATRIX_IO_HPP
