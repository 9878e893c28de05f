// Copyright 2026 The duality-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Config-driven sweeps: one report row per (t, parameter) combination,
 * written as CSV.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace duality {

enum class Method { kSuzuki, kMultiProduct, kTaylor, kLcuRandom };

[[nodiscard]] std::string_view method_name(Method m);

/**
 * INI-style experiment description. Top-level keys: hamiltonian, t_values,
 * seed, output, and optionally method. Exactly one section, named after the
 * method, holds its parameters:
 *
 *   [suzuki]        chi = 1, 2      r = 1
 *   [multiproduct]  k = 1, 2        gamma = 0.8   r = 1   weights = order-matched
 *   [taylor]        epsilon = 1e-4, 1e-6
 *   [lcu-random]    terms = 2, 4    trials = 10   qubits = 2
 *
 * The first list in each section is the swept parameter. Relative paths are
 * resolved against the config file's directory.
 */
struct ExperimentConfig {
    Method method = Method::kSuzuki;
    std::filesystem::path hamiltonian;
    std::vector<double> t_values;
    /// Swept parameter values (chi, k, epsilon or terms).
    std::vector<double> sweep;
    /// Remaining method keys, unparsed.
    std::map<std::string, std::string> options;
    std::uint64_t seed = 0;
    std::filesystem::path output;
};

/// Throws ConfigError naming the offending field.
[[nodiscard]] ExperimentConfig
parse_config(std::string_view text, const std::filesystem::path &base_dir = {});
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path &path);

inline constexpr std::string_view kCsvHeader =
    "method,n,L,t,r,order_param,error_vs_oracle,success_prob,gate_count,"
    "wall_ms,error_code";

struct ReportRow {
    std::string method;
    std::size_t n = 0;
    std::size_t L = 0;
    double t = 0.0;
    std::size_t r = 0;
    double order_param = 0.0;
    double error_vs_oracle = 0.0;
    double success_prob = 0.0;
    std::size_t gate_count = 0;
    double wall_ms = 0.0;
    /// Empty on success, otherwise the exception's code(); numeric fields
    /// are then written as nan.
    std::string error_code;
    /// Method-specific extras for `simulate` output.
    std::map<std::string, std::vector<double>> details;

    [[nodiscard]] std::string csv_line() const;
};

/// Computes one row. Numeric failures are caught and recorded in
/// error_code; config and file errors propagate.
[[nodiscard]] ReportRow run_row(const ExperimentConfig &config, double t,
                                double param);

/**
 * Every (t, param) row in config order, computed on `threads` workers
 * (0 = hardware concurrency). Throws ConfigError if the Hamiltonian cannot
 * be loaded.
 */
[[nodiscard]] std::vector<ReportRow> run_sweep(const ExperimentConfig &config,
                                               unsigned threads = 0);

/// Header plus rows, newline-terminated.
[[nodiscard]] std::string to_csv(const std::vector<ReportRow> &rows);

/// Writes through a temporary sibling file and renames it into place.
void write_atomically(const std::filesystem::path &path,
                      const std::string &content);

} // namespace duality
