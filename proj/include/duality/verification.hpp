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
 * Self-checks behind `duality_sim verify`: each suite measures a set of
 * invariants and compares them with the active tolerance profile.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "duality/tolerances.hpp"

namespace duality {

struct CheckResult {
    std::string name;
    double measured;
    /// Human-readable acceptance condition, e.g. "<= 1e-10" or "3 ± 0.3".
    std::string expected;
    bool pass;
};

/// numerics, pauli, lcu, product, slopes, taylor.
[[nodiscard]] const std::vector<std::string> &suite_names();

/// Runs one suite, or every suite for "all". Throws UsageError for unknown
/// names.
[[nodiscard]] std::vector<CheckResult>
run_suite(std::string_view suite, const tol::Profile &profile,
          std::uint64_t seed = 2024);

/// One line per check; returns true iff every check passed.
bool print_results(std::ostream &out, const std::vector<CheckResult> &results);

/// Log-log slopes of ‖approx − e^{−iHt}‖ for S_1, S_2, M_{1,1}, M_{2,2} on
/// the transverse-field test Hamiltonian ZZ + ½XI + ½IX.
struct SlopeReport {
    std::string label;
    double slope;
    double target;
    double tolerance;
};
[[nodiscard]] std::vector<SlopeReport> order_slopes(const tol::Profile &profile);

} // namespace duality
