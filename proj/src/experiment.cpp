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

#include "waxkit/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "waxkit/lossy.hpp"
#include "waxkit/matrix_io.hpp"
#include "waxkit/sparse.hpp"
#include "waxkit/validity.hpp"
#include "waxkit/version.hpp"
#include "waxkit/wax.hpp"

namespace waxkit {

using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Runs `tasks` on up to thread_cap() workers; results keep task order.
std::vector<std::string> parallel_rows(std::vector<std::function<std::string()>>& tasks) {
    std::vector<std::string> out(tasks.size());
    const int workers = std::max(1, std::min<int>(thread_cap(), static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) out[i] = tasks[i]();
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
    return out;
}

std::vector<long long> sweep_points(const ExperimentConfig& cfg) {
    std::vector<long long> pts;
    if (!cfg.sweep) {
        pts.push_back(-1);  // sentinel: single point at the configured dims
        return pts;
    }
    if (cfg.sweep->axis != "T" && cfg.sweep->axis != "L" && cfg.sweep->axis != "ones_fraction")
        throw invalid_input("sweep axis must be T, L or ones_fraction");
    if (cfg.sweep->lo > cfg.sweep->hi) throw invalid_input("empty sweep range");
    if (cfg.sweep->lo < 1) throw invalid_input("sweep range must start at 1");
    for (long long v = cfg.sweep->lo; v <= cfg.sweep->hi; ++v) pts.push_back(v);
    return pts;
}

Dims dims_at_point(const ExperimentConfig& cfg, long long v) {
    Dims d = cfg.dims;
    if (v < 0 || !cfg.sweep) return d;
    if (cfg.sweep->axis == "T") d.t = static_cast<int>(v);
    if (cfg.sweep->axis == "L") {
        d.l = static_cast<int>(v);
        d.n = static_cast<int>(v);
    }
    return d;
}

bool row_failed(const std::string& row) { return row.find(",error=") != std::string::npos; }

std::string error_cell(const std::exception& e) {
    std::string msg = e.what();
    for (auto& c : msg)
        if (c == ',' || c == '\n') c = ';';
    return ",error=" + msg;
}

std::string run_validate(const ExperimentConfig& cfg, std::ostringstream& body,
                         ExperimentOutcome& outcome) {
    const auto pts = sweep_points(cfg);
    const bool frac_axis = cfg.sweep && cfg.sweep->axis == "ones_fraction";
    std::vector<std::function<std::string()>> tasks;
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            tasks.push_back([&, pi, trial] {
                const Dims d = dims_at_point(cfg, pts[pi]);
                const RngSpec rs = experiment_stream(cfg.seed, static_cast<long long>(pi), trial);
                std::ostringstream row;
                row << d.m << ',' << d.k << ',' << d.l << ',' << d.t << ',';
                double frac = 0.0;
                if (frac_axis) {
                    frac = static_cast<double>(pts[pi]) / 100.0;
                    row << g17(frac);
                }
                row << ',' << trial << ',' << rs.stream;
                try {
                    const CMatrix a = frac_axis ? random_sparse_a(d, frac, derive(rs, 0))
                                                : sample_gaussian(derive(rs, 0), d.m, d.t);
                    const Verdict v = validate_combiner(a, d, derive(rs, 1), 1);
                    row << ',' << (v.valid ? 1 : 0) << ','
                        << g17(v.residuals.empty() ? 0.0 : v.residuals.front());
                } catch (const std::exception& e) {
                    row << ",," << error_cell(e);
                }
                return row.str();
            });
        }
    }
    body << "M,K,L,T,ones_fraction,trial,stream,valid,residual\n";
    for (const auto& row : parallel_rows(tasks)) {
        body << row << '\n';
        ++outcome.rows_total;
        if (row_failed(row)) ++outcome.rows_failed;
    }
    return body.str();
}

std::string run_sparse_search(const ExperimentConfig& cfg, std::ostringstream& body,
                              ExperimentOutcome& outcome) {
    const auto pts = sweep_points(cfg);
    std::vector<std::function<std::string()>> tasks;
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        tasks.push_back([&, pi] {
            Dims d = dims_at_point(cfg, pts[pi]);
            if (d.t <= 0) d.t = static_cast<int>(t_opt(d.m, d.k, d.l));
            const RngSpec rs = experiment_stream(cfg.seed, static_cast<long long>(pi), 0);
            std::ostringstream row;
            row << d.m << ',' << d.k << ',' << d.l << ',' << d.t << ',';
            try {
                const SearchResult r = minimize_ones(d, rs, 2000);
                row << r.ones << ',' << r.sum_modules << ',' << (r.valid ? 1 : 0) << ',' << rs.stream
                    << ',' << r.iterations;
            } catch (const std::exception& e) {
                row << ",,," << rs.stream << ',' << error_cell(e);
            }
            return row.str();
        });
    }
    body << "M,K,L,T,ones,sum_modules,valid,seed,iterations\n";
    for (const auto& row : parallel_rows(tasks)) {
        body << row << '\n';
        ++outcome.rows_total;
        if (row_failed(row)) ++outcome.rows_failed;
    }
    return body.str();
}

std::string run_rate_curve(const ExperimentConfig& cfg, std::ostringstream& body,
                           ExperimentOutcome& outcome) {
    const auto pts = sweep_points(cfg);
    const double snr = std::pow(10.0, cfg.snr_db / 10.0);
    std::vector<std::function<std::string()>> tasks;
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            tasks.push_back([&, pi, trial] {
                const Dims d = dims_at_point(cfg, pts[pi]);
                const RngSpec rs = experiment_stream(cfg.seed, static_cast<long long>(pi), trial);
                std::ostringstream rows;
                auto emit = [&](const RateReport& rep) {
                    rows << d.m << ',' << d.k << ',' << d.l << ',' << d.t << ',' << g17(cfg.snr_db)
                         << ',' << rs.stream << ',' << rep.method << ',' << g17(rep.i_lossless)
                         << ',' << g17(rep.i_achieved) << ',' << g17(rep.relative) << '\n';
                };
                try {
                    const CMatrix h = sample_gaussian(derive(rs, 0), d.m, d.k);
                    const CMatrix a = sample_gaussian(derive(rs, 1), d.m, d.t);
                    const double i_y = mutual_info_y(h, snr);
                    if (satisfies_existence(d)) {
                        const WaxResult wr = wax_decompose(h, a, d, derive(rs, 2));
                        if (wr.success) {
                            RateReport rep;
                            rep.i_lossless = i_y;
                            rep.i_achieved = mutual_info_z(h, a, wr.w, snr);
                            rep.relative = 100.0 * rep.i_achieved / i_y;
                            rep.method = "wax";
                            rep.snr = snr;
                            emit(rep);
                            return rows.str();
                        }
                    }
                    const ApproxMf mf = approx_mf(h, a, d, snr);
                    emit(mf.report);
                    const auto refined = refine_rate(h, a, d, snr, mf.w, 2000, derive(rs, 3));
                    emit(refined.second);
                    if (d.t >= d.k) {
                        const PanelSelection sel = select_panels(h, d, d.t);
                        CMatrix h_red(sel.reduced.m, d.k);
                        CMatrix a_red(sel.reduced.m, d.t);
                        for (std::size_t i = 0; i < sel.panels.size(); ++i) {
                            h_red.rows(i * d.l, (i + 1) * d.l - 1) =
                                h.rows(sel.panels[i] * d.l, (sel.panels[i] + 1) * d.l - 1);
                            a_red.rows(i * d.l, (i + 1) * d.l - 1) =
                                a.rows(sel.panels[i] * d.l, (sel.panels[i] + 1) * d.l - 1);
                        }
                        const WaxResult wr = wax_decompose(h_red, a_red, sel.reduced, derive(rs, 4));
                        if (wr.success) {
                            // Dropped panels process nothing; kept panels use
                            // the reduced decomposition.
                            BlockDiag w_full;
                            const int p = d.m / d.l;
                            w_full.blocks.assign(p, CMatrix(d.l, d.l, arma::fill::zeros));
                            for (std::size_t i = 0; i < sel.panels.size(); ++i)
                                w_full.blocks[sel.panels[i]] = wr.w.blocks[i];
                            RateReport rep;
                            rep.i_lossless = i_y;
                            rep.i_achieved = mutual_info_z(h, a, w_full, snr);
                            rep.relative = 100.0 * rep.i_achieved / i_y;
                            rep.method = "panel-select";
                            rep.snr = snr;
                            emit(rep);
                        }
                    }
                } catch (const std::exception& e) {
                    rows << d.m << ',' << d.k << ',' << d.l << ',' << d.t << ',' << g17(cfg.snr_db)
                         << ',' << rs.stream << ",,,," << error_cell(e) << '\n';
                }
                return rows.str();
            });
        }
    }
    body << "M,K,L,T,snr_db,seed,method,i_lossless,i_achieved,relative\n";
    for (const auto& chunk : parallel_rows(tasks)) {
        std::istringstream lines(chunk);
        std::string row;
        while (std::getline(lines, row)) {
            body << row << '\n';
            ++outcome.rows_total;
            if (row_failed(row)) ++outcome.rows_failed;
        }
    }
    return body.str();
}

std::string run_bound_table(const ExperimentConfig& cfg, std::ostringstream& body,
                            ExperimentOutcome& outcome) {
    body << "M,K,L,T,r_max,Q,min_ones\n";
    for (int k = 1; k <= cfg.dims.k; ++k) {
        const long long lo = cfg.sweep ? cfg.sweep->lo : 1;
        const long long hi = cfg.sweep ? std::min<long long>(cfg.sweep->hi, k) : k;
        for (long long l = lo; l <= hi; ++l) {
            const long long t = t_opt(cfg.dims.m, k, l);
            body << cfg.dims.m << ',' << k << ',' << l << ',' << t << ',';
            try {
                const SparsityBound b = ones_lower_bound(cfg.dims.m, k, l, t);
                if (b.r_max_unbounded)
                    body << "inf";
                else
                    body << b.r_max;
                body << ',' << b.q << ',' << b.min_ones << '\n';
            } catch (const std::exception& e) {
                body << ",," << error_cell(e) << '\n';
                ++outcome.rows_failed;
            }
            ++outcome.rows_total;
        }
    }
    return body.str();
}

}  // namespace

ExperimentKind kind_from_string(const std::string& s) {
    if (s == "validate") return ExperimentKind::Validate;
    if (s == "sparse-search") return ExperimentKind::SparseSearch;
    if (s == "rate-curve") return ExperimentKind::RateCurve;
    if (s == "bound-table") return ExperimentKind::BoundTable;
    throw invalid_input("unknown experiment kind: " + s);
}

RngSpec experiment_stream(std::uint64_t seed, long long point_index, int trial) {
    return derive(RngSpec{seed, 0},
                  static_cast<std::uint64_t>(point_index) * 1000003ull + static_cast<std::uint64_t>(trial));
}

int thread_cap() {
    if (const char* env = std::getenv("WAXKIT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, ExperimentKind kind) {
    if (cfg.out_path.empty()) throw invalid_input("experiment requires an output path");
    ExperimentOutcome outcome;
    std::ostringstream body;
    std::string csv;
    switch (kind) {
        case ExperimentKind::Validate:
            csv = run_validate(cfg, body, outcome);
            break;
        case ExperimentKind::SparseSearch:
            csv = run_sparse_search(cfg, body, outcome);
            break;
        case ExperimentKind::RateCurve:
            csv = run_rate_curve(cfg, body, outcome);
            break;
        case ExperimentKind::BoundTable:
            csv = run_bound_table(cfg, body, outcome);
            break;
    }

    atomic_write(cfg.out_path, csv);

    // Companion metadata; timestamps live here, never in the CSV body.
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    json meta = json::parse(config_to_json(cfg));
    meta["version"] = kWaxkitVersion;
    meta["unix_time"] = static_cast<long long>(now);
    meta["rows_total"] = outcome.rows_total;
    meta["rows_failed"] = outcome.rows_failed;
    atomic_write(cfg.out_path + ".meta.json", meta.dump(2));
    return outcome;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j{{"dims", {{"m", cfg.dims.m}, {"k", cfg.dims.k}, {"l", cfg.dims.l}, {"n", cfg.dims.n}, {"t", cfg.dims.t}}},
           {"seed", cfg.seed},
           {"trials", cfg.trials},
           {"snr_db", cfg.snr_db},
           {"out_path", cfg.out_path}};
    if (cfg.sweep) j["sweep"] = {{"axis", cfg.sweep->axis}, {"lo", cfg.sweep->lo}, {"hi", cfg.sweep->hi}};
    return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    const json j = json::parse(text);
    ExperimentConfig cfg;
    const auto& d = j.at("dims");
    cfg.dims.m = d.at("m").get<int>();
    cfg.dims.k = d.at("k").get<int>();
    cfg.dims.l = d.at("l").get<int>();
    cfg.dims.n = d.value("n", cfg.dims.l);
    cfg.dims.t = d.value("t", 0);
    cfg.seed = j.value("seed", 1ull);
    cfg.trials = j.value("trials", 1);
    cfg.snr_db = j.value("snr_db", 10.0);
    cfg.out_path = j.value("out_path", std::string());
    if (j.contains("sweep")) {
        SweepSpec s;
        s.axis = j["sweep"].at("axis").get<std::string>();
        s.lo = j["sweep"].at("lo").get<long long>();
        s.hi = j["sweep"].at("hi").get<long long>();
        cfg.sweep = s;
    }
    return cfg;
}

}  // namespace waxkit
