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
 * Trotter–Suzuki product formulas and multi-product formulas realized as
 * generalized gates.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "duality/lcu.hpp"
#include "duality/pauli.hpp"

namespace duality {

/// Default γ in ℓ_{k+1} = ⌈e^{γ(k+1)}⌉.
inline constexpr double kDefaultGamma = 0.8;

/// s_{χ−1} = (4 − 4^{1/(2χ−1)})^{−1}, the fractional step inside S_χ.
/// Throws ParameterError for chi < 2.
[[nodiscard]] double suzuki_fraction(int chi);

/**
 * Symmetric Suzuki formula S_χ(t).
 *
 * S_1(t) = Π_j e^{−iα_jH_j t/2} · Π_{j reversed} e^{−iα_jH_j t/2} in term
 * order, S_χ(t) = S_{χ−1}(st)² S_{χ−1}((1−4s)t) S_{χ−1}(st)² with
 * s = suzuki_fraction(χ). Throws ParameterError for chi < 1.
 */
[[nodiscard]] DenseOperator suzuki(const HamiltonianSpec &spec, double t,
                                   int chi);

/// S_χ(t/r)^r. Throws ParameterError for chi < 1 or r < 1.
[[nodiscard]] DenseOperator suzuki_power(const HamiltonianSpec &spec, double t,
                                         int chi, std::size_t r);

/// Number of term exponentials in one S_χ: 2L·5^{χ−1}.
[[nodiscard]] std::size_t suzuki_exponential_count(std::size_t terms, int chi);

/**
 * How the multi-product coefficients C_q are chosen.
 *
 * kLagrange: C_q = Π_{j≠q} ℓ_q²/(ℓ_q² − ℓ_j²), Richardson extrapolation in
 * ℓ^{−2}. Cancels the ℓ^{−2}, …, ℓ^{−2k} error terms, which for a base
 * formula S_k with k ≥ 2 leaves an O(t^{2k+3}) remainder.
 *
 * kOrderMatched: C_q ∝ ℓ_q^{2k} / Π_{j≠q}(ℓ_q^{−2} − ℓ_j^{−2}). Cancels the
 * ℓ^{−2k}, …, ℓ^{−2(2k−1)} terms that the order-2k base formula actually
 * produces, so M_{k,k} is accurate to O(t^{4k+1}). Identical to kLagrange
 * for k = 1.
 */
enum class MultiProductWeights { kOrderMatched, kLagrange };

struct MultiProductParams {
    int k = 1;
    double gamma = kDefaultGamma;
    MultiProductWeights weights = MultiProductWeights::kOrderMatched;
    /// ℓ_1 … ℓ_{k+1}, strictly increasing.
    std::vector<std::size_t> ells;
    /// C_1 … C_{k+1}, Σ C_q = 1.
    std::vector<double> coeffs;

    /// Σ|C_q| (≥ 1).
    [[nodiscard]] double abs_sum() const;
};

/// ℓ_q = q for q ≤ k, ℓ_{k+1} = ⌈e^{γ(k+1)}⌉. Throws ParameterError for
/// k < 1, non-positive γ, or when ℓ_{k+1} collides with {1, …, k}.
[[nodiscard]] MultiProductParams
multiproduct_params(int k, double gamma = kDefaultGamma,
                    MultiProductWeights weights =
                        MultiProductWeights::kOrderMatched);

/// M_{k,k}(t) as a normalized gate: scale · gate.matrix() = Σ C_q U_q with
/// U_q = S_k(t/ℓ_q)^{ℓ_q} and scale = Σ|C_q|.
struct MultiProductGate {
    GeneralizedGate gate;
    double scale;
    MultiProductParams params;

    /// scale · Σ c_q U_q.
    [[nodiscard]] DenseOperator matrix() const;
};

[[nodiscard]] MultiProductGate multiproduct_gate(const HamiltonianSpec &spec,
                                                 double t,
                                                 const MultiProductParams &params);
[[nodiscard]] MultiProductGate
multiproduct_gate(const HamiltonianSpec &spec, double t, int k,
                  double gamma = kDefaultGamma,
                  MultiProductWeights weights =
                      MultiProductWeights::kOrderMatched);

struct MultiProductRun {
    Statevector state;
    /// Product of the per-segment success probabilities.
    double cumulative_success;
    /// ‖ψ_out − e^{−iHt}ψ‖.
    double error_vs_oracle;
    std::vector<double> success_probs;
    /// Controlled exponentials plus divider/combiner, all segments.
    std::size_t gate_count;
};

/**
 * r post-selected rounds of the M_{k,k}(t/r) duality circuit, renormalizing
 * after each. Throws ParameterError for r < 1 and ZeroWaveOutcome (with the
 * segment index) if a round fails.
 */
[[nodiscard]] MultiProductRun
simulate_multiproduct(const HamiltonianSpec &spec, double t, std::size_t r,
                      const MultiProductParams &params, const Statevector &psi);
[[nodiscard]] MultiProductRun
simulate_multiproduct(const HamiltonianSpec &spec, double t, std::size_t r,
                      int k, double gamma, const Statevector &psi);

} // namespace duality
