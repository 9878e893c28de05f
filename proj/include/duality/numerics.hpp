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
 * Dense complex linear algebra: operators, multi-register state vectors and
 * the exact Hermitian evolution used as ground truth by every other module.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "duality/tolerances.hpp"

namespace duality {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 16;

/// Largest total Hilbert-space dimension (system plus ancillas) any routine
/// will allocate. `DUALITY_SIM_MAX_DIM` overrides the 2^16 default.
[[nodiscard]] std::size_t max_dim();

/// Throws CapacityError when `dim` exceeds max_dim().
void check_capacity(std::size_t dim, const char *what);

/**
 * @brief Square complex matrix.
 *
 * Holds the U_i of a generalized gate, Pauli terms, dividers and combiners.
 * Value type; all operations return new operators.
 */
class DenseOperator {
  public:
    DenseOperator() = default;
    /// Throws DimensionError unless `matrix` is square and nonempty.
    explicit DenseOperator(Matrix matrix);

    [[nodiscard]] static DenseOperator identity(std::size_t dim);
    [[nodiscard]] static DenseOperator zero(std::size_t dim);

    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }
    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return matrix_(static_cast<Eigen::Index>(row),
                       static_cast<Eigen::Index>(col));
    }

    [[nodiscard]] DenseOperator adjoint() const;
    [[nodiscard]] bool is_unitary(double tolerance = tol::kUnitarity) const;
    [[nodiscard]] bool is_hermitian(double tolerance = tol::kHermiticity) const;
    [[nodiscard]] bool is_finite() const;

    /// Throws DimensionError on size mismatch.
    [[nodiscard]] Vector apply(const Vector &v) const;

    friend DenseOperator operator*(const DenseOperator &a,
                                   const DenseOperator &b);
    friend DenseOperator operator+(const DenseOperator &a,
                                   const DenseOperator &b);
    friend DenseOperator operator-(const DenseOperator &a,
                                   const DenseOperator &b);
    friend DenseOperator operator*(Complex s, const DenseOperator &a);

  private:
    Matrix matrix_;
};

/// max_ij |a_ij − b_ij|; throws DimensionError on size mismatch.
[[nodiscard]] double max_abs_diff(const DenseOperator &a,
                                  const DenseOperator &b);

/// e^{−iHt} via Hermitian eigendecomposition.
/// Throws NumericError for non-finite input, HermiticityError otherwise.
[[nodiscard]] DenseOperator expm_hermitian(const DenseOperator &h, double t);

/// Largest singular value. Throws DimensionError for an empty matrix.
[[nodiscard]] double spectral_norm(const Matrix &a);
[[nodiscard]] inline double spectral_norm(const DenseOperator &a) {
    return spectral_norm(a.matrix());
}

/// Kronecker product a ⊗ b (a is the more significant factor).
[[nodiscard]] DenseOperator tensor(const DenseOperator &a,
                                   const DenseOperator &b);

/// |⟨a|b⟩|² / (‖a‖²‖b‖²).
[[nodiscard]] double fidelity(const Vector &a, const Vector &b);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double fit_loglog_slope(std::span<const double> x,
                                      std::span<const double> y);

/// A value of the form (register index, required basis value).
struct Control {
    std::size_t reg;
    std::size_t value;
};

/**
 * @brief Unit-norm amplitude vector over an ordered list of registers.
 *
 * Register 0 is the most significant digit of the amplitude index. The
 * system under simulation is register 0 by convention; ancillas follow.
 */
class Statevector {
  public:
    /// Throws DimensionError if the shape product differs from the length,
    /// NormalizationError unless ‖amplitudes‖ = 1 within tol::kNormalization.
    Statevector(Vector amplitudes, std::vector<std::size_t> shape);
    explicit Statevector(Vector amplitudes);

    /// Rescales to unit norm. Throws NumericError for a zero vector.
    [[nodiscard]] static Statevector normalized(Vector amplitudes);
    [[nodiscard]] static Statevector basis(std::vector<std::size_t> shape,
                                           std::size_t index);
    /// Haar-random state of dimension `dim`.
    [[nodiscard]] static Statevector random(std::size_t dim,
                                            std::mt19937_64 &rng);

    [[nodiscard]] const Vector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const std::vector<std::size_t> &shape() const noexcept {
        return shape_;
    }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] double norm() const { return amps_.norm(); }

    /// |this⟩ ⊗ |other⟩ with the registers of `other` appended.
    [[nodiscard]] Statevector tensor(const Statevector &other) const;

    /// Applies `u` to the contiguous registers [first, first + count).
    void apply(std::size_t first, std::size_t count, const DenseOperator &u);
    void apply(std::size_t reg, const DenseOperator &u) { apply(reg, 1, u); }

    /// Applies `u` to register `target` on the branches where every control
    /// register holds its required value.
    void apply_controlled(std::span<const Control> controls,
                          std::size_t target, const DenseOperator &u);

    /// I − 2P₀, where P₀ projects registers [first, first + count) onto |0…0⟩.
    void reflect_zero(std::size_t first, std::size_t count);

    /// Unnormalized amplitudes of registers [0, first) on the branch where
    /// registers [first, end) are all zero.
    [[nodiscard]] Vector project_trailing_zero(std::size_t first) const;

  private:
    struct Split {
        std::size_t left, mid, right;
    };
    [[nodiscard]] Split split(std::size_t first, std::size_t count) const;

    Vector amps_;
    std::vector<std::size_t> shape_;
};

/// Haar-random unitary via QR of a complex Gaussian matrix.
[[nodiscard]] DenseOperator random_unitary(std::size_t dim,
                                           std::mt19937_64 &rng);
/// Random Hermitian matrix with Gaussian entries (GUE-like scale).
[[nodiscard]] DenseOperator random_hermitian(std::size_t dim,
                                             std::mt19937_64 &rng);
/// Complex standard Gaussian sample.
[[nodiscard]] Complex random_gaussian(std::mt19937_64 &rng);

} // namespace duality
