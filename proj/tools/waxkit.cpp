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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "waxkit/experiment.hpp"
#include "waxkit/matrix_io.hpp"
#include "waxkit/wax.hpp"

namespace {

// Exit codes: 0 success, 1 input error, 2 infeasible decomposition.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

int cmd_decompose(const std::string& h_file, const std::string& a_file, waxkit::Dims dims,
                  std::uint64_t seed, int max_attempts, const std::string& out) {
    waxkit::CMatrix h, a;
    try {
        h = waxkit::load_matrix(h_file);
        a = waxkit::load_matrix(a_file);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (dims.n < dims.l) {
            // Panels smaller than their output count: the given combiner is
            // the design matrix of the equivalent square problem.
            waxkit::require_expandable(dims);
            dims.n = dims.l;
        }
        const waxkit::WaxResult r =
            waxkit::wax_decompose(h, a, dims, waxkit::RngSpec{seed, 0}, max_attempts);
        if (!out.empty()) waxkit::save_factors(r, out);
        std::printf("residual %.3g\n", r.residual);
        if (!r.success) {
            std::cerr << "infeasible: null space dimension " << r.nullspace_dim << " after "
                      << r.attempts << " attempts\n";
            return kExitInfeasible;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

int cmd_experiment(waxkit::ExperimentConfig cfg, const std::string& kind_name) {
    try {
        const auto kind = waxkit::kind_from_string(kind_name);
        if (cfg.dims.t <= 0 && kind != waxkit::ExperimentKind::BoundTable &&
            !(cfg.sweep && cfg.sweep->axis == "T"))
            cfg.dims.t = static_cast<int>(waxkit::t_opt(cfg.dims.m, cfg.dims.k, cfg.dims.l));
        const auto outcome = waxkit::run_experiment(cfg, kind);
        std::printf("wrote %s (%d rows, %d failed)\n", cfg.out_path.c_str(), outcome.rows_total,
                    outcome.rows_failed);
        if (outcome.rows_total > 0 && outcome.rows_failed == outcome.rows_total) return kExitInput;
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    // Monte Carlo loops parallelize at task level; keep BLAS single threaded.
    setenv("OPENBLAS_NUM_THREADS", "1", 0);

    CLI::App app{"WAX decomposition toolkit"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    // decompose ------------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "factor a channel as W*A*X");
    dec->set_help_flag("--help", "print help");
    std::string h_file, a_file, out_file;
    waxkit::Dims dims{};
    std::uint64_t seed = 1;
    int max_attempts = 10;
    dec->add_option("--h", h_file, "channel matrix JSON")->required();
    dec->add_option("--a", a_file, "combiner matrix JSON")->required();
    dec->add_option("--m", dims.m, "antennas")->required();
    dec->add_option("--k", dims.k, "users")->required();
    dec->add_option("--l", dims.l, "outputs per panel")->required();
    dec->add_option("--n", dims.n, "antennas per panel (default l)");
    dec->add_option("--t", dims.t, "CPU inputs")->required();
    dec->add_option("--seed", seed, "RNG seed");
    dec->add_option("--max-attempts", max_attempts, "null-space combinations to try");
    dec->add_option("--out", out_file, "factors JSON output path");

    // experiment -----------------------------------------------------------
    auto* exp = app.add_subcommand("experiment", "run a seeded experiment, emit CSV");
    exp->set_help_flag("--help", "print help");
    waxkit::ExperimentConfig cfg;
    std::string kind, sweep_arg, config_file;
    exp->add_option("--kind", kind, "validate|sparse-search|rate-curve|bound-table");
    exp->add_option("--config", config_file, "experiment config JSON (flags override)");
    exp->add_option("--m", cfg.dims.m, "antennas");
    exp->add_option("--k", cfg.dims.k, "users");
    exp->add_option("--l", cfg.dims.l, "outputs per panel");
    exp->add_option("--n", cfg.dims.n, "antennas per panel (default l)");
    exp->add_option("--t", cfg.dims.t, "CPU inputs (0 picks the minimum feasible)");
    exp->add_option("--seed", cfg.seed, "RNG seed");
    exp->add_option("--trials", cfg.trials, "Monte Carlo trials per sweep point");
    exp->add_option("--snr-db", cfg.snr_db, "transmit SNR in dB");
    exp->add_option("--sweep", sweep_arg, "axis:lo:hi with axis in {T, L, ones_fraction}");
    exp->add_option("--out", cfg.out_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    if (dec->parsed()) {
        if (dims.n == 0) dims.n = dims.l;
        return cmd_decompose(h_file, a_file, dims, seed, max_attempts, out_file);
    }

    if (!config_file.empty()) {
        try {
            std::ifstream in(config_file);
            if (!in) throw waxkit::invalid_input("cannot open config: " + config_file);
            std::stringstream ss;
            ss << in.rdbuf();
            waxkit::ExperimentConfig from_file = waxkit::config_from_json(ss.str());
            // Flags given on the command line take precedence.
            if (cfg.dims.m == 0) cfg.dims = from_file.dims;
            if (cfg.out_path.empty()) cfg.out_path = from_file.out_path;
            if (!exp->count("--seed")) cfg.seed = from_file.seed;
            if (!exp->count("--trials")) cfg.trials = from_file.trials;
            if (!exp->count("--snr-db")) cfg.snr_db = from_file.snr_db;
            if (!cfg.sweep) cfg.sweep = from_file.sweep;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInput;
        }
    }
    if (cfg.dims.n == 0) cfg.dims.n = cfg.dims.l;
    if (!sweep_arg.empty()) {
        waxkit::SweepSpec s;
        const auto c1 = sweep_arg.find(':');
        const auto c2 = sweep_arg.rfind(':');
        if (c1 == std::string::npos || c2 == c1) {
            std::cerr << "error: sweep must be axis:lo:hi\n";
            return kExitInput;
        }
        s.axis = sweep_arg.substr(0, c1);
        try {
            s.lo = std::stoll(sweep_arg.substr(c1 + 1, c2 - c1 - 1));
            s.hi = std::stoll(sweep_arg.substr(c2 + 1));
        } catch (const std::exception&) {
            std::cerr << "error: sweep bounds must be integers\n";
            return kExitInput;
        }
        cfg.sweep = s;
    }
    return cmd_experiment(cfg, kind);
}
