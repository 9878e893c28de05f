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
 * Generalized (duality) gates L = Σ c_i U_i and their realization as
 * ancilla circuits: divider V, controlled U_i, combiner W, then
 * post-selection of the ancilla on |0⟩.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "duality/numerics.hpp"

namespace duality {

/**
 * @brief Validated linear combination of unitaries with Σ|c_i| ≤ 1.
 *
 * Build through make_duality_gate. Combinations whose coefficients sum to
 * more than one in absolute value have to be rescaled by the caller, who
 * keeps the scale factor separately.
 */
class GeneralizedGate {
  public:
    [[nodiscard]] const std::vector<Complex> &coeffs() const noexcept {
        return coeffs_;
    }
    [[nodiscard]] const std::vector<DenseOperator> &unitaries() const noexcept {
        return unitaries_;
    }
    /// Σ|c_i|.
    [[nodiscard]] double s_bar() const noexcept { return s_bar_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept {
        return unitaries_.front().dim();
    }
    /// Σ c_i U_i as a dense matrix.
    [[nodiscard]] DenseOperator matrix() const;

  private:
    friend GeneralizedGate make_duality_gate(std::vector<Complex>,
                                             std::vector<DenseOperator>);
    GeneralizedGate() = default;

    std::vector<Complex> coeffs_;
    std::vector<DenseOperator> unitaries_;
    double s_bar_ = 0.0;
};

/// Throws DimensionError for empty/unequal lists or mismatched dims,
/// CoefficientBoundError when Σ|c_i| > 1 + 1e-12, UnitarityError when a
/// member is not unitary.
[[nodiscard]] GeneralizedGate make_duality_gate(std::vector<Complex> coeffs,
                                                std::vector<DenseOperator> unitaries);

/// Divider column p (V_{i0} = p_i) and combiner row q (W_{0i} = q_i).
struct DividerSpec {
    Vector p;
    Vector q;

    /// c_i = q_i p_i.
    [[nodiscard]] Vector coefficients() const { return q.cwiseProduct(p); }
};

/// Throws NormalizationError unless ‖p‖ = ‖q‖ = 1 within 1e-12 and
/// DimensionError if their lengths differ.
[[nodiscard]] DividerSpec make_divider(Vector p, Vector q);

/// p_i = q_i = √(|c_i| / Σ|c_j|); the phase of c_i is carried by U_i.
[[nodiscard]] DividerSpec default_divider(const GeneralizedGate &gate);

/**
 * Unitary whose column 0 is `first_column`, built from one Householder
 * reflection. Deterministic. Throws NormalizationError unless the input has
 * unit norm within 1e-10; the input is renormalized before use.
 */
[[nodiscard]] DenseOperator complete_unitary(const Vector &first_column);

/// Unitary whose row 0 is `first_row`: the adjoint of complete_unitary(q̄).
[[nodiscard]] DenseOperator complete_unitary_row(const Vector &first_row);

/// Σ c_i U_i |ψ⟩ without normalization. Throws DimensionError.
[[nodiscard]] Vector apply_direct(const GeneralizedGate &gate,
                                  const Statevector &psi);

/// Unitary acting on a contiguous block of ancilla registers.
struct AncillaStep {
    std::size_t first;
    std::size_t count;
    DenseOperator unitary;
};

/// System unitary applied on the branches selected by `controls`.
struct SelectStep {
    std::vector<Control> controls;
    DenseOperator unitary;
};

/**
 * @brief Divide / select / combine circuit on system ⊗ ancillas.
 *
 * Register 0 of the full state is the system; register i ≥ 1 is
 * `ancilla_dims[i - 1]`. The circuit starts from |ψ⟩|0…0⟩ and succeeds when
 * every ancilla is measured in |0⟩.
 */
struct LcuCircuit {
    std::size_t system_dim = 0;
    std::vector<std::size_t> ancilla_dims;
    std::vector<AncillaStep> divide;
    std::vector<SelectStep> select;
    std::vector<AncillaStep> combine;
    /// Elementary-gate estimate filled in by the builder.
    std::size_t gate_count = 0;

    [[nodiscard]] std::size_t total_dim() const;
    /// |ψ⟩ ⊗ |0…0⟩. Throws CapacityError past the dimension cap.
    [[nodiscard]] Statevector embed(const Statevector &psi) const;
    /// Applies divide, select, combine in order.
    void apply(Statevector &state) const;
    /// Applies the inverse circuit.
    void apply_adjoint(Statevector &state) const;
    /// Reflection I − 2P₀ about the all-zero ancilla subspace.
    void reflect(Statevector &state) const;
    /// System amplitudes on the all-zero ancilla branch (unnormalized).
    [[nodiscard]] Vector postselect(const Statevector &state) const;
};

/// Renormalized post-selected output and the probability of obtaining it.
struct CircuitOutcome {
    Statevector state;
    double success_prob;
};

/// Renormalizes `branch`; throws ZeroWaveOutcome when ‖branch‖² < 1e-14.
[[nodiscard]] CircuitOutcome renormalize(const Vector &branch,
                                         std::size_t segment = 0);

/// Builds the single-qudit circuit for `gate`: V on the slit qudit,
/// U_i controlled on value i, W, with W = V† for the default divider.
[[nodiscard]] LcuCircuit
build_duality_circuit(const GeneralizedGate &gate,
                      const std::optional<DividerSpec> &divider = std::nullopt);

/**
 * Simulates the four-step duality protocol on |ψ⟩|0⟩ and post-selects the
 * slit qudit on |0⟩.
 *
 * With the default divider the output is L|ψ⟩/‖L|ψ⟩‖ and the success
 * probability is ‖L|ψ⟩‖² / (Σ|c_i|)². A custom divider must factor the gate,
 * i.e. q_i p_i = λ c_i for one nonzero λ (ParameterError otherwise); the
 * gate's U_i are then used unchanged.
 *
 * Throws ZeroWaveOutcome when the post-selected branch vanishes.
 */
[[nodiscard]] CircuitOutcome
run_duality_circuit(const GeneralizedGate &gate, const Statevector &psi,
                    const std::optional<DividerSpec> &divider = std::nullopt);

/// Writes any nonzero operator as scale · (Σ c_i U_i) with four unitaries:
/// the Hermitian and anti-Hermitian parts are each an average of a unitary
/// and its adjoint. A zero operator yields scale 0.
[[nodiscard]] std::pair<GeneralizedGate, double>
decompose_operator(const DenseOperator &a);

} // namespace duality
