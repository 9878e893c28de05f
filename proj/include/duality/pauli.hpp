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
 * Hamiltonians given as weighted Pauli strings, and their normalization into
 * positive weights times unitary (and Hermitian) terms.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "duality/numerics.hpp"

namespace duality {

/// coefficient · P₁⊗…⊗Pₙ with Pᵢ ∈ {I, X, Y, Z}; the first letter acts on the
/// most significant qubit.
struct PauliTerm {
    double coefficient = 0.0;
    std::string paulis;

    [[nodiscard]] std::size_t qubits() const noexcept { return paulis.size(); }
};

/**
 * Parses the term-list format: one `<float> <pauli-string>` per line, `#`
 * starts a comment, blank lines are skipped. Term order is preserved.
 * Throws ParseError carrying the 1-based line number.
 */
[[nodiscard]] std::vector<PauliTerm> parse_hamiltonian(std::string_view text);

/// Reads and parses a term-list file. Throws ConfigError if unreadable.
[[nodiscard]] std::vector<PauliTerm>
load_hamiltonian(const std::filesystem::path &path);

/// Unit-weight matrix of a Pauli string. Throws CapacityError past the cap.
[[nodiscard]] DenseOperator pauli_string_matrix(std::string_view paulis);

/// coefficient times the Pauli-string matrix.
[[nodiscard]] DenseOperator term_matrix(const PauliTerm &term);

/// One α_ℓ H_ℓ summand: α > 0 and H_ℓ = ±(Pauli string).
struct WeightedUnitary {
    double alpha;
    DenseOperator unitary;
    /// Signed label such as "-YY", kept for reports.
    std::string label;
};

/**
 * @brief H = Σ_ℓ α_ℓ H_ℓ with every α_ℓ > 0 and every H_ℓ unitary.
 *
 * Because the H_ℓ are signed Pauli strings they are also Hermitian
 * involutions with ‖H_ℓ‖ = 1, so `h()` (a bound on ‖α_ℓ H_ℓ‖) is max α_ℓ.
 */
class HamiltonianSpec {
  public:
    HamiltonianSpec(std::vector<WeightedUnitary> terms, std::size_t qubits);

    [[nodiscard]] const std::vector<WeightedUnitary> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << qubits_;
    }
    /// Number of terms (L, also called m for product formulas).
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    /// Σ α_ℓ.
    [[nodiscard]] double g() const noexcept { return g_; }
    /// max α_ℓ.
    [[nodiscard]] double h() const noexcept { return h_; }

    /// Σ α_ℓ H_ℓ as a dense matrix.
    [[nodiscard]] DenseOperator matrix() const;

  private:
    std::vector<WeightedUnitary> terms_;
    std::size_t qubits_;
    double g_ = 0.0;
    double h_ = 0.0;
};

/// Sets α_ℓ = |c_ℓ| and folds the sign into the unitary.
/// Throws EmptyHamiltonianError for no terms, DimensionError for mixed
/// string lengths.
[[nodiscard]] HamiltonianSpec alpha_normalize(std::span<const PauliTerm> terms);

} // namespace duality
