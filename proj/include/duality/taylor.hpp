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
 * Truncated-Taylor-series simulation of e^{−iHt}: per-segment LCU over the
 * index set J, its prepare/select/unprepare circuit, and one round of
 * oblivious amplitude amplification per segment.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "duality/lcu.hpp"
#include "duality/pauli.hpp"

namespace duality {

/// Segment layout for evolving time t to target error ε.
struct SegmentPlan {
    double t = 0.0;
    double epsilon = 0.0;
    /// Segment count; 0 only for t = 0.
    std::size_t r = 0;
    /// t / r.
    double tau = 0.0;
    /// Truncation order.
    std::size_t K = 0;
    /// Σ_j β_j = Σ_{k≤K} (gτ)^k / k!.
    double s = 1.0;
    /// Σ_{k≤K} τ^k / k!.
    double f = 1.0;
    /// Σ α_ℓ.
    double g = 0.0;
};

/**
 * r = ⌈g·t / ln 2⌉ so that gτ ≤ ln 2 and s ≤ 2; K is the least order with
 * the series tail bound 2(gτ)^{K+1}/(K+1)! ≤ ε/r. t = 0 gives r = 0.
 * Throws ParameterError unless t ≥ 0 is finite and 0 < ε < 1.
 */
[[nodiscard]] SegmentPlan plan_segments(const HamiltonianSpec &spec, double t,
                                        double epsilon);

/// |J| = Σ_{k=0}^{K} L^k, saturating at SIZE_MAX.
[[nodiscard]] std::size_t taylor_index_count(std::size_t terms, std::size_t K);

/// One element (k, ℓ₁, …, ℓ_k) of J; `terms` holds 0-based term indices.
struct TaylorIndex {
    std::vector<std::size_t> terms;
    [[nodiscard]] std::size_t order() const noexcept { return terms.size(); }
};

/// Ũ = Σ_{j∈J} β_j V_j with β = (τ^k/k!)Πα_{ℓᵢ} and V = (−i)^k H_{ℓ₁}⋯H_{ℓ_k}.
struct TaylorGate {
    std::vector<TaylorIndex> index_set;
    std::vector<double> betas;
    std::vector<DenseOperator> unitaries;

    /// Σ β_j.
    [[nodiscard]] double s() const;
    /// Ũ (not normalized).
    [[nodiscard]] DenseOperator matrix() const;
    /// Ũ / s as a validated generalized gate.
    [[nodiscard]] GeneralizedGate normalized() const;
};

/// Enumerates J in (k, ℓ⃗) lexicographic order. Throws CapacityError when
/// |J| exceeds the dimension cap.
[[nodiscard]] TaylorGate taylor_gate(const HamiltonianSpec &spec,
                                     const SegmentPlan &plan);

/**
 * @brief One segment as a prepare/select/unprepare circuit.
 *
 * Registers: system, then K unary-control qubits, then K qudits of
 * dimension L (one per Taylor slot). The unary divider puts amplitude
 * √((gτ)^k/k! / s) on the pattern 1^k0^{K−k}; every qudit divider puts
 * √(α_ℓ/g) on |ℓ⟩. Slot j applies −iH_ℓ when unary qubit j is 1 and qudit j
 * holds ℓ. Combiners are the adjoint dividers, so the all-zero ancilla
 * branch carries Ũ|ψ⟩/s.
 *
 * Elementary-gate model per segment:
 *  - unary divider + combiner: 2K single-qubit rotations;
 *  - qudit dividers + combiners: 2K(L − 1) rotations;
 *  - select: K·L multi-controlled terms, each ⌈log₂L⌉ gates to decode the
 *    qudit value, n controlled Paulis and one controlled phase.
 */
struct TaylorCircuit {
    LcuCircuit circuit;
    SegmentPlan plan;
    std::size_t system_qubits = 0;
    std::size_t terms = 0;
    /// Unary divider column restricted to the patterns 1^k0^{K−k}.
    std::vector<Complex> unary_amplitudes;
    /// Qudit divider column.
    std::vector<Complex> qudit_amplitudes;
    /// The weighted unitaries −iH_ℓ in term order.
    std::vector<DenseOperator> slot_ops;

    [[nodiscard]] std::size_t gate_count() const { return circuit.gate_count; }
    /// Human-readable register layout.
    [[nodiscard]] std::string layout() const;
    /**
     * System block ⟨0|W_circ|0⟩ evaluated from the prepared amplitudes:
     * Σ_k |a_k|² (Σ_ℓ |b_ℓ|² (−iH_ℓ))^k. Equals Ũ/s.
     */
    [[nodiscard]] DenseOperator postselected_block() const;
};

/// Throws ParameterError for r = 0 plans and CapacityError if the unary
/// register operator exceeds the dimension cap.
[[nodiscard]] TaylorCircuit build_segment_circuit(const HamiltonianSpec &spec,
                                                  const SegmentPlan &plan);

/// Elementary gates of one segment under the model documented on
/// TaylorCircuit.
[[nodiscard]] std::size_t segment_gate_count(std::size_t system_qubits,
                                             std::size_t terms, std::size_t K);

/// Result of one amplified segment.
struct AmplifiedOutcome {
    Statevector state;
    double success_prob;
    /// ‖A|ψ,0⟩‖ before post-selection; only set for full-register runs.
    double register_norm;
    bool full_register;
};

/**
 * One round A = −W R W† R W, R = I − 2P₀, simulated on the full register,
 * followed by post-selection on the all-zero ancilla branch.
 * Throws ZeroWaveOutcome if that branch vanishes.
 */
[[nodiscard]] AmplifiedOutcome oaa_round(const LcuCircuit &circuit,
                                         const Statevector &psi);

enum class OaaMode {
    /// Full register when it fits under the dimension cap, block otherwise.
    kAuto,
    kFullRegister,
    /// Uses P₀AP₀ = 3M − 4MM†M with M the post-selected block.
    kBlock,
};

/**
 * Amplifies one Taylor segment. When s < 2 the circuit is first given a
 * padding qubit whose divider leaves amplitude s/2 on |0⟩, so the
 * post-selected block is exactly Ũ/2 and a single round is deterministic up
 * to the truncation error.
 */
[[nodiscard]] AmplifiedOutcome oaa_round(const TaylorCircuit &segment,
                                         const Statevector &psi,
                                         OaaMode mode = OaaMode::kAuto);

struct TaylorDiagnostics {
    std::size_t r = 0;
    std::size_t K = 0;
    double s = 1.0;
    /// ‖s·(post-selected block) − e^{−iHτ}‖; every segment shares it.
    double segment_error = 0.0;
    /// ‖ψ_out − e^{−iHt}ψ‖.
    double total_error = 0.0;
    std::vector<double> success_probs;
    std::size_t segment_gate_count = 0;
    /// Over all segments.
    std::size_t gate_count = 0;
    bool full_register = false;
};

struct TaylorRun {
    Statevector state;
    TaylorDiagnostics diagnostics;
};

/// r amplified segments with post-selection and renormalization. t = 0
/// returns ψ unchanged. Throws ZeroWaveOutcome carrying the segment index.
[[nodiscard]] TaylorRun simulate_taylor(const HamiltonianSpec &spec, double t,
                                        double epsilon, const Statevector &psi,
                                        OaaMode mode = OaaMode::kAuto);

} // namespace duality
