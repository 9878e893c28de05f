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
#include "duality/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "duality/errors.hpp"

namespace duality {

DenseOperator GeneralizedGate::matrix() const {
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim()),
                              static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        sum += coeffs_[i] * unitaries_[i].matrix();
    return DenseOperator(std::move(sum));
}

GeneralizedGate make_duality_gate(std::vector<Complex> coeffs,
                                  std::vector<DenseOperator> unitaries) {
    if (coeffs.empty() || coeffs.size() != unitaries.size())
        throw DimensionError("gate needs equally many (>= 1) coefficients and "
                             "unitaries");
    const std::size_t dim = unitaries.front().dim();
    double s_bar = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (unitaries[i].dim() != dim)
            throw DimensionError("gate unitaries have different dimensions");
        if (!std::isfinite(coeffs[i].real()) ||
            !std::isfinite(coeffs[i].imag()))
            throw NumericError("non-finite gate coefficient");
        if (!unitaries[i].is_unitary())
            throw UnitarityError("gate member " + std::to_string(i) +
                                 " is not unitary");
        s_bar += std::abs(coeffs[i]);
    }
    if (s_bar > 1.0 + tol::kCoefficientBound)
        throw CoefficientBoundError("sum of |c_i| is " +
                                    std::to_string(s_bar) +
                                    " > 1; rescale the coefficients");
    GeneralizedGate gate;
    gate.coeffs_ = std::move(coeffs);
    gate.unitaries_ = std::move(unitaries);
    gate.s_bar_ = s_bar;
    return gate;
}

DividerSpec make_divider(Vector p, Vector q) {
    if (p.size() == 0 || p.size() != q.size())
        throw DimensionError("divider and combiner lengths differ");
    if (std::abs(p.norm() - 1.0) > tol::kEquality ||
        std::abs(q.norm() - 1.0) > tol::kEquality)
        throw NormalizationError("divider/combiner structure is not unit norm");
    return {std::move(p), std::move(q)};
}

DividerSpec default_divider(const GeneralizedGate &gate) {
    const auto d = static_cast<Eigen::Index>(gate.size());
    Vector p(d);
    for (Eigen::Index i = 0; i < d; ++i)
        p[i] = std::sqrt(std::abs(gate.coeffs()[static_cast<std::size_t>(i)]) /
                         gate.s_bar());
    p /= p.norm();
    return {p, p};
}

DenseOperator complete_unitary(const Vector &first_column) {
    const double n = first_column.norm();
    if (first_column.size() == 0 || !std::isfinite(n) ||
        std::abs(n - 1.0) > tol::kNormalization)
        throw NormalizationError("first column must have unit norm, got " +
                                 std::to_string(n));
    const Vector v = first_column / n;
    const auto d = v.size();
    // Reflect v onto −e^{iθ}e₀ (θ = arg v₀): u = v + e^{iθ}e₀ has no
    // cancellation in its leading entry. H = I − 2uu†/‖u‖² is Hermitian and
    // unitary with H(−e^{iθ}e₀) = v, so V = H·diag(−e^{iθ}, 1, …, 1).
    const Complex phase =
        std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex(1.0);
    Vector u = v;
    u[0] += phase;
    const double uu = u.squaredNorm();
    Matrix h = Matrix::Identity(d, d) - (2.0 / uu) * (u * u.adjoint());
    h.col(0) *= -phase;
    return DenseOperator(std::move(h));
}

DenseOperator complete_unitary_row(const Vector &first_row) {
    return complete_unitary(first_row.conjugate()).adjoint();
}

Vector apply_direct(const GeneralizedGate &gate, const Statevector &psi) {
    if (psi.size() != gate.dim())
        throw DimensionError("state of size " + std::to_string(psi.size()) +
                             " against gate of dim " +
                             std::to_string(gate.dim()));
    Vector out = Vector::Zero(static_cast<Eigen::Index>(gate.dim()));
    for (std::size_t i = 0; i < gate.size(); ++i)
        out += gate.coeffs()[i] * (gate.unitaries()[i].matrix() *
                                   psi.amplitudes());
    return out;
}

// ---------------------------------------------------------------------------
// Circuit engine

std::size_t LcuCircuit::total_dim() const {
    return std::accumulate(ancilla_dims.begin(), ancilla_dims.end(),
                           system_dim, std::multiplies<>());
}

Statevector LcuCircuit::embed(const Statevector &psi) const {
    if (psi.size() != system_dim)
        throw DimensionError("state does not match circuit system register");
    check_capacity(total_dim(), "LCU circuit register");
    std::vector<std::size_t> shape{system_dim};
    shape.insert(shape.end(), ancilla_dims.begin(), ancilla_dims.end());
    const std::size_t ancilla = total_dim() / system_dim;
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(total_dim()));
    for (std::size_t s = 0; s < system_dim; ++s)
        amps[static_cast<Eigen::Index>(s * ancilla)] =
            psi.amplitudes()[static_cast<Eigen::Index>(s)];
    return Statevector(std::move(amps), std::move(shape));
}

void LcuCircuit::apply(Statevector &state) const {
    for (const AncillaStep &step : divide)
        state.apply(step.first, step.count, step.unitary);
    for (const SelectStep &step : select)
        state.apply_controlled(step.controls, 0, step.unitary);
    for (const AncillaStep &step : combine)
        state.apply(step.first, step.count, step.unitary);
}

void LcuCircuit::apply_adjoint(Statevector &state) const {
    for (auto it = combine.rbegin(); it != combine.rend(); ++it)
        state.apply(it->first, it->count, it->unitary.adjoint());
    for (auto it = select.rbegin(); it != select.rend(); ++it)
        state.apply_controlled(it->controls, 0, it->unitary.adjoint());
    for (auto it = divide.rbegin(); it != divide.rend(); ++it)
        state.apply(it->first, it->count, it->unitary.adjoint());
}

void LcuCircuit::reflect(Statevector &state) const {
    if (ancilla_dims.empty()) {
        state = Statevector(-state.amplitudes(), state.shape());
        return;
    }
    state.reflect_zero(1, ancilla_dims.size());
}

Vector LcuCircuit::postselect(const Statevector &state) const {
    if (ancilla_dims.empty())
        return state.amplitudes();
    return state.project_trailing_zero(1);
}

CircuitOutcome renormalize(const Vector &branch, std::size_t segment) {
    const double p = branch.squaredNorm();
    if (!(p >= tol::kZeroWave))
        throw ZeroWaveOutcome(p, segment);
    // ‖branch‖² can exceed 1 by rounding when the block is unitary.
    return {Statevector(branch / std::sqrt(p)), std::min(p, 1.0)};
}

LcuCircuit build_duality_circuit(const GeneralizedGate &gate,
                                 const std::optional<DividerSpec> &divider) {
    const std::size_t d = gate.size();
    LcuCircuit circuit;
    circuit.system_dim = gate.dim();
    circuit.ancilla_dims = {d};

    std::vector<DenseOperator> branch_ops;
    branch_ops.reserve(d);
    DenseOperator v, w;
    if (!divider) {
        const DividerSpec spec = default_divider(gate);
        for (std::size_t i = 0; i < d; ++i) {
            const Complex c = gate.coeffs()[i];
            const Complex phase =
                std::abs(c) > 0.0 ? c / std::abs(c) : Complex(1.0);
            branch_ops.push_back(phase * gate.unitaries()[i]);
        }
        v = complete_unitary(spec.p);
        w = v.adjoint();
    } else {
        if (static_cast<std::size_t>(divider->p.size()) != d)
            throw DimensionError("divider length does not match gate size");
        const Vector produced = divider->coefficients();
        Vector wanted(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i)
            wanted[static_cast<Eigen::Index>(i)] = gate.coeffs()[i];
        // Best λ with produced ≈ λ·wanted, then require the residual to vanish.
        const Complex lambda = wanted.dot(produced) / wanted.squaredNorm();
        if (std::abs(lambda) == 0.0 ||
            (produced - lambda * wanted).norm() >
                tol::kNormalization * produced.norm())
            throw ParameterError("divider/combiner do not factor the gate "
                                 "coefficients");
        branch_ops = gate.unitaries();
        v = complete_unitary(divider->p);
        w = complete_unitary_row(divider->q);
    }

    circuit.divide.push_back({1, 1, v});
    for (std::size_t i = 0; i < d; ++i)
        circuit.select.push_back({{Control{1, i}}, branch_ops[i]});
    circuit.combine.push_back({1, 1, w});
    circuit.gate_count = 2 + d;
    return circuit;
}

CircuitOutcome run_duality_circuit(const GeneralizedGate &gate,
                                   const Statevector &psi,
                                   const std::optional<DividerSpec> &divider) {
    if (psi.size() != gate.dim())
        throw DimensionError("state does not match gate dimension");
    const LcuCircuit circuit = build_duality_circuit(gate, divider);
    Statevector state = circuit.embed(psi);
    circuit.apply(state);
    return renormalize(circuit.postselect(state));
}

namespace {
/// K + i√(I − K²) for Hermitian K with ‖K‖ ≤ 1.
DenseOperator unitary_lift(const Matrix &k) {
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (k + k.adjoint()));
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    Vector diag(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const double x = std::clamp(lambda[i], -1.0, 1.0);
        diag[i] = Complex(x, std::sqrt(1.0 - x * x));
    }
    const Matrix &v = eig.eigenvectors();
    return DenseOperator(v * diag.asDiagonal() * v.adjoint());
}
} // namespace

std::pair<GeneralizedGate, double> decompose_operator(const DenseOperator &a) {
    if (!a.is_finite())
        throw NumericError("decompose_operator: non-finite input");
    const double norm = spectral_norm(a);
    const std::size_t dim = a.dim();
    if (norm == 0.0) {
        const auto id = DenseOperator::identity(dim);
        return {make_duality_gate({0.5, 0.5}, {id, Complex(-1.0) * id}), 0.0};
    }
    const Matrix b = a.matrix() / norm;
    const Matrix re = 0.5 * (b + b.adjoint());
    const Matrix im = Complex(0.0, -0.5) * (b - b.adjoint());
    const DenseOperator ur = unitary_lift(re);
    const DenseOperator ui = unitary_lift(im);
    // b = ½(U_r + U_r†) + ½i(U_i + U_i†); Σ|c| = 2 is folded into the scale.
    const Complex quarter(0.25, 0.0);
    const Complex iquarter(0.0, 0.25);
    return {make_duality_gate({quarter, quarter, iquarter, iquarter},
                              {ur, ur.adjoint(), ui, ui.adjoint()}),
            2.0 * norm};
}

} // namespace duality
