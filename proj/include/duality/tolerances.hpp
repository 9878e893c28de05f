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
 * Central table of numerical tolerances. Tests, the `verify` command and
 * the README all quote these values.
 */
#pragma once

#include <string_view>

namespace duality::tol {

/// ‖A†A − I‖_max bound for is_unitary.
inline constexpr double kUnitarity = 1e-10;
/// ‖A − A†‖_max bound for is_hermitian.
inline constexpr double kHermiticity = 1e-10;
/// Entry-wise agreement of two routes to the same exact quantity.
inline constexpr double kEquality = 1e-12;
/// Unit-norm tolerance for divider columns and input states.
inline constexpr double kNormalization = 1e-10;
/// Half-width of the accepted band around a predicted convergence order.
inline constexpr double kSlope = 0.3;
/// Wider band for the ninth-order multi-product fit.
inline constexpr double kSlopeHighOrder = 0.5;
/// Allowed 1 − fidelity between circuit and direct LCU action.
inline constexpr double kFidelity = 1e-10;
/// Below this post-selection probability the outcome is a zero wave.
inline constexpr double kZeroWave = 1e-14;
/// Slack on Σ|c_i| ≤ 1.
inline constexpr double kCoefficientBound = 1e-12;

/// Thresholds used by the `verify` command. `strict` tightens the
/// statistical bands; the exact-identity checks are already at
/// round-off level and stay the same.
struct Profile {
    double slope;
    double slope_high_order;
    double fidelity;
    double equality;
};

inline constexpr Profile kDefaultProfile{kSlope, kSlopeHighOrder, kFidelity,
                                         kEquality};
inline constexpr Profile kStrictProfile{0.15, 0.25, 1e-12, kEquality};

/// Returns the named profile; throws UsageError for unknown names.
Profile profile(std::string_view name);

} // namespace duality::tol
