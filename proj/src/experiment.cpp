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
#include "duality/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "duality/errors.hpp"
#include "duality/lcu.hpp"
#include "duality/numerics.hpp"
#include "duality/pauli.hpp"
#include "duality/product_formulas.hpp"
#include "duality/taylor.hpp"

namespace duality {

std::string_view method_name(Method m) {
    switch (m) {
    case Method::kSuzuki:
        return "suzuki";
    case Method::kMultiProduct:
        return "multiproduct";
    case Method::kTaylor:
        return "taylor";
    case Method::kLcuRandom:
        return "lcu-random";
    }
    return "unknown";
}

namespace {

struct MethodKeys {
    Method method;
    std::string_view swept;
    std::set<std::string, std::less<>> others;
};

const std::vector<MethodKeys> &method_table() {
    static const std::vector<MethodKeys> table{
        {Method::kSuzuki, "chi", {"r"}},
        {Method::kMultiProduct, "k", {"gamma", "r", "weights"}},
        {Method::kTaylor, "epsilon", {"mode"}},
        {Method::kLcuRandom, "terms", {"trials", "qubits"}},
    };
    return table;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string &field, const std::string &text) {
    const std::string v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() ||
        !std::isfinite(out))
        throw ConfigError(field, "not a finite number: '" + v + "'");
    return out;
}

std::uint64_t parse_unsigned(const std::string &field, const std::string &text) {
    const std::string v = trim(text);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ConfigError(field, "not a non-negative integer: '" + v + "'");
    return out;
}

std::vector<double> parse_list(const std::string &field,
                               const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty())
            out.push_back(parse_double(field, item));
    if (out.empty())
        throw ConfigError(field, "list is empty");
    return out;
}

std::size_t option_count(const ExperimentConfig &c, const std::string &key,
                         std::size_t fallback, std::size_t min_value) {
    const auto it = c.options.find(key);
    if (it == c.options.end())
        return fallback;
    const std::uint64_t v = parse_unsigned(key, it->second);
    if (v < min_value)
        throw ConfigError(key, "must be at least " + std::to_string(min_value));
    return static_cast<std::size_t>(v);
}

double option_gamma(const ExperimentConfig &c) {
    const auto it = c.options.find("gamma");
    if (it == c.options.end())
        return kDefaultGamma;
    const double g = parse_double("gamma", it->second);
    if (g <= 0.0)
        throw ConfigError("gamma", "must be positive");
    return g;
}

MultiProductWeights option_weights(const ExperimentConfig &c) {
    const auto it = c.options.find("weights");
    if (it == c.options.end())
        return MultiProductWeights::kOrderMatched;
    const std::string v = trim(it->second);
    if (v == "order-matched")
        return MultiProductWeights::kOrderMatched;
    if (v == "lagrange")
        return MultiProductWeights::kLagrange;
    throw ConfigError("weights", "expected order-matched or lagrange");
}

OaaMode option_mode(const ExperimentConfig &c) {
    const auto it = c.options.find("mode");
    if (it == c.options.end())
        return OaaMode::kAuto;
    const std::string v = trim(it->second);
    if (v == "auto")
        return OaaMode::kAuto;
    if (v == "full")
        return OaaMode::kFullRegister;
    if (v == "block")
        return OaaMode::kBlock;
    throw ConfigError("mode", "expected auto, full or block");
}

void check_integral(const std::string &field, const std::vector<double> &values,
                    double min_value) {
    for (const double v : values)
        if (v != std::floor(v) || v < min_value)
            throw ConfigError(field, "expected integers >= " +
                                         std::to_string(int(min_value)));
}

void validate(const ExperimentConfig &c) {
    switch (c.method) {
    case Method::kSuzuki:
        check_integral("chi", c.sweep, 1);
        (void)option_count(c, "r", 1, 1);
        break;
    case Method::kMultiProduct:
        check_integral("k", c.sweep, 1);
        (void)option_count(c, "r", 1, 1);
        (void)option_gamma(c);
        (void)option_weights(c);
        break;
    case Method::kTaylor:
        for (const double e : c.sweep)
            if (!(e > 0.0 && e < 1.0))
                throw ConfigError("epsilon", "values must lie in (0, 1)");
        (void)option_mode(c);
        break;
    case Method::kLcuRandom:
        check_integral("terms", c.sweep, 1);
        (void)option_count(c, "trials", 1, 1);
        (void)option_count(c, "qubits", 1, 1);
        break;
    }
}

} // namespace

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path &base_dir) {
    namespace pt = boost::property_tree;
    // Values never contain '#' or ';', so both start a comment anywhere.
    std::string stripped;
    for (std::size_t pos = 0; pos < text.size();) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        stripped.append(line.substr(0, line.find_first_of("#;")));
        stripped += '\n';
        pos = end + 1;
    }

    pt::ptree tree;
    try {
        std::istringstream in(stripped);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError("config", "line " + std::to_string(e.line()) + ": " +
                                        e.message());
    }

    ExperimentConfig c;
    const MethodKeys *keys = nullptr;
    std::optional<std::string> method_key;
    bool have_t = false;
    for (const auto &[key, node] : tree) {
        if (!node.empty()) {
            if (keys != nullptr)
                throw ConfigError("method", "more than one method section");
            const auto &table = method_table();
            const auto it = std::find_if(table.begin(), table.end(),
                                         [&](const MethodKeys &m) {
                                             return method_name(m.method) == key;
                                         });
            if (it == table.end())
                throw ConfigError("method", "unknown method '" + key + "'");
            keys = &*it;
            continue;
        }
        const std::string value = node.data();
        if (key == "method")
            method_key = trim(value);
        else if (key == "hamiltonian")
            c.hamiltonian = trim(value);
        else if (key == "t_values") {
            have_t = true;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!trim(item).empty())
                    c.t_values.push_back(parse_double("t_values", item));
        } else if (key == "seed")
            c.seed = parse_unsigned("seed", value);
        else if (key == "output")
            c.output = trim(value);
        else
            throw ConfigError(key, "unknown key");
    }

    if (keys == nullptr)
        throw ConfigError("method", "missing [method] section");
    c.method = keys->method;
    if (method_key && *method_key != method_name(c.method))
        throw ConfigError("method", "'" + *method_key +
                                        "' does not match the section name");
    if (!have_t || c.t_values.empty())
        throw ConfigError("t_values", "at least one time is required");
    for (const double t : c.t_values)
        if (t < 0.0)
            throw ConfigError("t_values", "times must be non-negative");
    if (c.hamiltonian.empty() && c.method != Method::kLcuRandom)
        throw ConfigError("hamiltonian", "path is required");

    const std::string swept(keys->swept);
    bool have_sweep = false;
    for (const auto &[key, node] : tree.get_child(std::string(method_name(c.method)))) {
        if (key == swept) {
            c.sweep = parse_list(key, node.data());
            have_sweep = true;
        } else if (keys->others.count(key) != 0) {
            c.options[key] = node.data();
        } else {
            throw ConfigError(key, "unknown key for method " +
                                       std::string(method_name(c.method)));
        }
    }
    if (!have_sweep)
        throw ConfigError(swept, "required for method " +
                                     std::string(method_name(c.method)));
    validate(c);

    if (!c.hamiltonian.empty() && c.hamiltonian.is_relative())
        c.hamiltonian = base_dir / c.hamiltonian;
    if (!c.output.empty() && c.output.is_relative())
        c.output = base_dir / c.output;
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

// ---------------------------------------------------------------------------
// Rows

namespace {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Row-specific generator: depends only on the seed and the row's (t, param).
std::mt19937_64 row_rng(std::uint64_t seed, double t, double param) {
    const auto tb = std::bit_cast<std::uint64_t>(t);
    const auto pb = std::bit_cast<std::uint64_t>(param);
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tb),
                      static_cast<std::uint32_t>(tb >> 32),
                      static_cast<std::uint32_t>(pb),
                      static_cast<std::uint32_t>(pb >> 32)};
    return std::mt19937_64(seq);
}

/// Input state shared by every row of a Hamiltonian sweep.
Statevector sweep_state(std::uint64_t seed, std::size_t dim) {
    std::mt19937_64 rng(seed);
    return Statevector::random(dim, rng);
}

HamiltonianSpec load_spec(const ExperimentConfig &c) {
    const auto terms = load_hamiltonian(c.hamiltonian);
    return alpha_normalize(terms);
}

void fill_suzuki(const ExperimentConfig &c, double t, double param,
                 ReportRow &row) {
    const HamiltonianSpec spec = load_spec(c);
    const int chi = static_cast<int>(param);
    const std::size_t r = option_count(c, "r", 1, 1);
    row.n = spec.qubits();
    row.L = spec.size();
    row.r = r;
    const Statevector psi = sweep_state(c.seed, spec.dim());
    const Vector approx = suzuki_power(spec, t, chi, r).apply(psi.amplitudes());
    const Vector exact =
        expm_hermitian(spec.matrix(), t).apply(psi.amplitudes());
    row.error_vs_oracle = (approx - exact).norm();
    row.success_prob = 1.0;
    row.gate_count = r * suzuki_exponential_count(spec.size(), chi);
}

void fill_multiproduct(const ExperimentConfig &c, double t, double param,
                       ReportRow &row) {
    const HamiltonianSpec spec = load_spec(c);
    const std::size_t r = option_count(c, "r", 1, 1);
    const MultiProductParams params = multiproduct_params(
        static_cast<int>(param), option_gamma(c), option_weights(c));
    row.n = spec.qubits();
    row.L = spec.size();
    row.r = r;
    const Statevector psi = sweep_state(c.seed, spec.dim());
    const MultiProductRun run = simulate_multiproduct(spec, t, r, params, psi);
    row.error_vs_oracle = run.error_vs_oracle;
    row.success_prob = run.cumulative_success;
    row.gate_count = run.gate_count;
    row.details["ells"] = {params.ells.begin(), params.ells.end()};
    row.details["coeffs"] = params.coeffs;
    row.details["success_probs"] = run.success_probs;
}

void fill_taylor(const ExperimentConfig &c, double t, double param,
                 ReportRow &row) {
    const HamiltonianSpec spec = load_spec(c);
    row.n = spec.qubits();
    row.L = spec.size();
    const Statevector psi = sweep_state(c.seed, spec.dim());
    const TaylorRun run = simulate_taylor(spec, t, param, psi, option_mode(c));
    const TaylorDiagnostics &d = run.diagnostics;
    row.r = d.r;
    row.error_vs_oracle = d.total_error;
    row.success_prob = 1.0;
    for (const double p : d.success_probs)
        row.success_prob *= p;
    row.gate_count = d.gate_count;
    row.details["K"] = {static_cast<double>(d.K)};
    row.details["s"] = {d.s};
    row.details["segment_error"] = {d.segment_error};
    row.details["success_probs"] = d.success_probs;
    row.details["segment_gate_count"] = {
        static_cast<double>(d.segment_gate_count)};
    row.details["full_register"] = {d.full_register ? 1.0 : 0.0};
}

void fill_lcu_random(const ExperimentConfig &c, double t, double param,
                     ReportRow &row) {
    const auto d = static_cast<std::size_t>(param);
    const std::size_t n = option_count(c, "qubits", 2, 1);
    const std::size_t trials = option_count(c, "trials", 1, 1);
    const std::size_t dim = std::size_t{1} << n;
    check_capacity(dim * d, "random LCU register");
    row.n = n;
    row.L = d;
    row.r = 1;
    std::mt19937_64 rng = row_rng(c.seed, t, param);

    double worst_state = 0.0, worst_prob = 0.0, mean_prob = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<Complex> coeffs(d);
        double total = 0.0;
        for (auto &ci : coeffs) {
            ci = random_gaussian(rng);
            total += std::abs(ci);
        }
        for (auto &ci : coeffs)
            ci /= total;
        std::vector<DenseOperator> us;
        for (std::size_t i = 0; i < d; ++i)
            us.push_back(expm_hermitian(random_hermitian(dim, rng), t));
        const GeneralizedGate gate = make_duality_gate(coeffs, us);
        const Statevector psi = Statevector::random(dim, rng);

        const CircuitOutcome out = run_duality_circuit(gate, psi);
        const Vector direct = apply_direct(gate, psi);
        const double direct_prob =
            direct.squaredNorm() / (gate.s_bar() * gate.s_bar());
        worst_state = std::max(
            worst_state, (out.state.amplitudes() - direct / direct.norm()).norm());
        worst_prob = std::max(worst_prob, std::abs(out.success_prob - direct_prob));
        mean_prob += out.success_prob;
        row.gate_count = build_duality_circuit(gate).gate_count;
    }
    row.error_vs_oracle = worst_state;
    row.success_prob = mean_prob / static_cast<double>(trials);
    row.details["max_success_prob_mismatch"] = {worst_prob};
}

} // namespace

ReportRow run_row(const ExperimentConfig &config, double t, double param) {
    ReportRow row;
    row.method = std::string(method_name(config.method));
    row.t = t;
    row.order_param = param;
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (config.method) {
        case Method::kSuzuki:
            fill_suzuki(config, t, param, row);
            break;
        case Method::kMultiProduct:
            fill_multiproduct(config, t, param, row);
            break;
        case Method::kTaylor:
            fill_taylor(config, t, param, row);
            break;
        case Method::kLcuRandom:
            fill_lcu_random(config, t, param, row);
            break;
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        row.error_code = e.code();
        row.details.clear();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return row;
}

std::string ReportRow::csv_line() const {
    const bool ok = error_code.empty();
    const std::string nan = "nan";
    std::string line;
    line += method + ',' + std::to_string(n) + ',' + std::to_string(L) + ',';
    line += format_double(t) + ',';
    line += (ok ? std::to_string(r) : nan) + ',';
    line += format_double(order_param) + ',';
    line += (ok ? format_double(error_vs_oracle) : nan) + ',';
    line += (ok ? format_double(success_prob) : nan) + ',';
    line += (ok ? std::to_string(gate_count) : nan) + ',';
    line += format_double(wall_ms) + ',';
    line += error_code;
    return line;
}

std::vector<ReportRow> run_sweep(const ExperimentConfig &config,
                                 unsigned threads) {
    if (config.method != Method::kLcuRandom)
        (void)load_spec(config); // surface file errors before spawning work

    struct Job {
        double t;
        double param;
    };
    std::vector<Job> jobs;
    for (const double t : config.t_values)
        for (const double p : config.sweep)
            jobs.push_back({t, p});

    std::vector<ReportRow> rows(jobs.size());
    std::vector<std::exception_ptr> failures(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                rows[i] = run_row(config, jobs[i].t, jobs[i].param);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, std::max<std::size_t>(1, jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();

    for (const auto &f : failures)
        if (f)
            std::rethrow_exception(f);
    return rows;
}

std::string to_csv(const std::vector<ReportRow> &rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const ReportRow &row : rows) {
        out += row.csv_line();
        out += '\n';
    }
    return out;
}

void write_atomically(const std::filesystem::path &path,
                      const std::string &content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("output", "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw ConfigError("output", "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("output", "cannot move report to " + path.string());
    }
}

} // namespace duality
