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
// duality_sim: command-line driver for sweeps, single simulations and the
// verification suites.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "duality/errors.hpp"
#include "duality/experiment.hpp"
#include "duality/tolerances.hpp"
#include "duality/verification.hpp"

namespace {

struct Options {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string profile = "default";
    std::string config;
    std::string suite;
};

duality::ExperimentConfig load(const Options &opt) {
    duality::ExperimentConfig config = duality::load_config(opt.config);
    if (opt.seed)
        config.seed = *opt.seed;
    if (!opt.out.empty())
        config.output = opt.out;
    return config;
}

nlohmann::json to_json(const duality::ReportRow &row) {
    nlohmann::json j;
    j["method"] = row.method;
    j["n"] = row.n;
    j["L"] = row.L;
    j["t"] = row.t;
    j["order_param"] = row.order_param;
    if (row.error_code.empty()) {
        j["r"] = row.r;
        j["error_vs_oracle"] = row.error_vs_oracle;
        j["success_prob"] = row.success_prob;
        j["gate_count"] = row.gate_count;
    } else {
        j["error_code"] = row.error_code;
    }
    j["wall_ms"] = row.wall_ms;
    for (const auto &[key, values] : row.details) {
        if (values.size() == 1)
            j["details"][key] = values.front();
        else
            j["details"][key] = values;
    }
    return j;
}

int run_simulate(const Options &opt) {
    const duality::ExperimentConfig config = load(opt);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : duality::run_sweep(config))
        rows.push_back(to_json(row));
    nlohmann::json doc;
    doc["method"] = std::string(duality::method_name(config.method));
    doc["seed"] = config.seed;
    doc["rows"] = std::move(rows);
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int run_sweep(const Options &opt) {
    const duality::ExperimentConfig config = load(opt);
    const auto rows = duality::run_sweep(config);
    const std::string csv = duality::to_csv(rows);
    if (config.output.empty()) {
        std::cout << csv;
    } else {
        duality::write_atomically(config.output, csv);
        std::cerr << "wrote " << rows.size() << " rows to "
                  << config.output.string() << '\n';
    }
    return 0;
}

int run_verify(const Options &opt) {
    const duality::tol::Profile profile = duality::tol::profile(opt.profile);
    const auto results =
        duality::run_suite(opt.suite, profile, opt.seed.value_or(2024));
    const bool ok = duality::print_results(std::cout, results);
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Duality-computer Hamiltonian simulation experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--seed", opt.seed, "Override the configured RNG seed");
    app.add_option("--out", opt.out, "Override the configured CSV path");
    app.add_option("--tolerance-profile", opt.profile,
                   "Tolerances for verify")
        ->check(CLI::IsMember({"strict", "default"}));

    auto *simulate =
        app.add_subcommand("simulate", "Run a config and print JSON diagnostics");
    simulate->add_option("config", opt.config, "Experiment config")->required();
    auto *sweep = app.add_subcommand("sweep", "Run a config and write CSV");
    sweep->add_option("config", opt.config, "Experiment config")->required();
    auto *verify = app.add_subcommand("verify", "Run invariant checks");
    verify->add_option("suite", opt.suite, "all, numerics, pauli, lcu, product, "
                                           "slopes or taylor")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed())
            return run_simulate(opt);
        if (sweep->parsed())
            return run_sweep(opt);
        return run_verify(opt);
    } catch (const duality::Error &e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
        return 2;
    }
}
