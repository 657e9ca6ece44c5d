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

#include "waxkit/matrix_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace waxkit {

using nlohmann::json;

namespace {

json matrix_to_json_obj(const CMatrix& m) {
    json data = json::array();
    for (arma::uword i = 0; i < m.n_rows; ++i)
        for (arma::uword j = 0; j < m.n_cols; ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.n_rows}, {"cols", m.n_cols}, {"data", std::move(data)}};
}

CMatrix matrix_from_json_obj(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw invalid_input("matrix JSON must carry rows, cols and data");
    const arma::uword rows = j.at("rows").get<arma::uword>();
    const arma::uword cols = j.at("cols").get<arma::uword>();
    const auto& data = j.at("data");
    if (data.size() != rows * cols) throw invalid_input("matrix JSON data length does not match shape");
    CMatrix m(rows, cols);
    arma::uword idx = 0;
    for (arma::uword i = 0; i < rows; ++i) {
        for (arma::uword j2 = 0; j2 < cols; ++j2, ++idx) {
            const auto& e = data.at(idx);
            if (!e.is_array() || e.size() != 2) throw invalid_input("matrix JSON entries must be [re, im] pairs");
            m(i, j2) = cx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    if (!m.is_finite()) throw invalid_input("matrix JSON carries non-finite values");
    return m;
}

}  // namespace

std::string matrix_to_json(const CMatrix& m) { return matrix_to_json_obj(m).dump(); }

CMatrix matrix_from_json(const std::string& text) {
    json j = json::parse(text);
    return matrix_from_json_obj(j);
}

void save_matrix(const CMatrix& m, const std::string& path) { atomic_write(path, matrix_to_json(m)); }

CMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open matrix file: " + path);
    json j;
    in >> j;
    return matrix_from_json_obj(j);
}

std::string factors_to_json(const WaxResult& r) {
    json blocks = json::array();
    for (const auto& b : r.w.blocks) blocks.push_back(matrix_to_json_obj(b));
    json j{{"W_blocks", std::move(blocks)},
           {"X", r.success ? matrix_to_json_obj(r.x) : json()},
           {"residual", r.residual},
           {"nullspace_dim", r.nullspace_dim}};
    return j.dump(2);
}

void save_factors(const WaxResult& r, const std::string& path) { atomic_write(path, factors_to_json(r)); }

void atomic_write(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << text;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace waxkit
