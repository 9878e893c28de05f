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
#include "duality/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

SegmentPlan plan_segments(const HamiltonianSpec &spec, double t,
                          double epsilon) {
    if (!std::isfinite(t) || t < 0.0)
        throw ParameterError("evolution time must be finite and >= 0");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw ParameterError("epsilon must lie in (0, 1)");

    SegmentPlan plan;
    plan.t = t;
    plan.epsilon = epsilon;
    plan.g = spec.g();
    if (t == 0.0)
        return plan;

    // Guard against g·t/ln 2 landing a rounding error above an integer.
    const double ratio = plan.g * t / std::numbers::ln2;
    plan.r = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12))));
    plan.tau = t / static_cast<double>(plan.r);

    const double x = plan.g * plan.tau;
    const double budget = epsilon / static_cast<double>(plan.r);
    std::size_t K = 0;
    double tail = 2.0 * x; // 2·x^{K+1}/(K+1)!
    while (tail > budget) {
        ++K;
        tail *= x / static_cast<double>(K + 1);
    }
    plan.K = K;

    double term_s = 1.0, term_f = 1.0;
    plan.s = 1.0;
    plan.f = 1.0;
    for (std::size_t k = 1; k <= K; ++k) {
        term_s *= x / static_cast<double>(k);
        term_f *= plan.tau / static_cast<double>(k);
        plan.s += term_s;
        plan.f += term_f;
    }
    return plan;
}

std::size_t taylor_index_count(std::size_t terms, std::size_t K) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0;
    std::size_t power = 1;
    for (std::size_t k = 0; k <= K; ++k) {
        if (total > kMax - power)
            return kMax;
        total += power;
        if (k < K) {
            if (terms != 0 && power > kMax / terms)
                return kMax;
            power *= terms;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// TaylorGate

double TaylorGate::s() const {
    double sum = 0.0;
    for (const double b : betas)
        sum += b;
    return sum;
}

DenseOperator TaylorGate::matrix() const {
    const auto d = static_cast<Eigen::Index>(unitaries.front().dim());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < betas.size(); ++j)
        sum += betas[j] * unitaries[j].matrix();
    return DenseOperator(std::move(sum));
}

GeneralizedGate TaylorGate::normalized() const {
    const double total = s();
    std::vector<Complex> coeffs;
    coeffs.reserve(betas.size());
    for (const double b : betas)
        coeffs.emplace_back(b / total);
    return make_duality_gate(std::move(coeffs), unitaries);
}

namespace {

std::vector<DenseOperator> weighted_slot_ops(const HamiltonianSpec &spec) {
    std::vector<DenseOperator> ops;
    for (const auto &term : spec.terms())
        ops.push_back(Complex(0.0, -1.0) * term.unitary);
    return ops;
}

void enumerate_order(const std::vector<DenseOperator> &slot_ops,
                     const HamiltonianSpec &spec, std::size_t remaining,
                     TaylorIndex &prefix, const Matrix &product, double weight,
                     TaylorGate &out) {
    if (remaining == 0) {
        out.index_set.push_back(prefix);
        out.betas.push_back(weight);
        out.unitaries.emplace_back(product);
        return;
    }
    for (std::size_t l = 0; l < slot_ops.size(); ++l) {
        prefix.terms.push_back(l);
        enumerate_order(slot_ops, spec, remaining - 1, prefix,
                        product * slot_ops[l].matrix(),
                        weight * spec.terms()[l].alpha, out);
        prefix.terms.pop_back();
    }
}

std::size_t ceil_log2(std::size_t v) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < v)
        ++bits;
    return bits;
}

} // namespace

TaylorGate taylor_gate(const HamiltonianSpec &spec, const SegmentPlan &plan) {
    const std::size_t count = taylor_index_count(spec.size(), plan.K);
    const std::size_t cap = max_dim();
    if (count > cap)
        throw CapacityError("Taylor index set needs " + std::to_string(count) +
                            " terms, cap is " + std::to_string(cap));
    const std::vector<DenseOperator> slot_ops = weighted_slot_ops(spec);
    const auto d = static_cast<Eigen::Index>(spec.dim());

    TaylorGate gate;
    gate.index_set.reserve(count);
    gate.betas.reserve(count);
    gate.unitaries.reserve(count);
    double coefficient = 1.0; // τ^k / k!
    for (std::size_t k = 0; k <= plan.K; ++k) {
        if (k > 0)
            coefficient *= plan.tau / static_cast<double>(k);
        TaylorIndex prefix;
        enumerate_order(slot_ops, spec, k, prefix, Matrix::Identity(d, d),
                        coefficient, gate);
    }
    return gate;
}

// ---------------------------------------------------------------------------
// Segment circuit

std::size_t segment_gate_count(std::size_t system_qubits, std::size_t terms,
                               std::size_t K) {
    const std::size_t unary = 2 * K;
    const std::size_t qudits = 2 * K * (terms - 1);
    const std::size_t select =
        K * terms * (ceil_log2(terms) + system_qubits + 1);
    return unary + qudits + select;
}

std::string TaylorCircuit::layout() const {
    std::ostringstream os;
    os << "system " << system_qubits << " qubits; " << plan.K
       << " unary-control qubits; " << plan.K << " qudits of dimension "
       << terms;
    return os.str();
}

DenseOperator TaylorCircuit::postselected_block() const {
    const auto d = static_cast<Eigen::Index>(circuit.system_dim);
    Matrix step = Matrix::Zero(d, d);
    for (std::size_t l = 0; l < slot_ops.size(); ++l)
        step += std::norm(qudit_amplitudes[l]) * slot_ops[l].matrix();
    Matrix block = Matrix::Zero(d, d);
    Matrix power = Matrix::Identity(d, d);
    for (std::size_t k = 0; k < unary_amplitudes.size(); ++k) {
        if (k > 0)
            power = (power * step).eval();
        block += std::norm(unary_amplitudes[k]) * power;
    }
    return DenseOperator(std::move(block));
}

TaylorCircuit build_segment_circuit(const HamiltonianSpec &spec,
                                    const SegmentPlan &plan) {
    if (plan.r == 0)
        throw ParameterError("no segment to build for t = 0");
    const std::size_t K = plan.K;
    const std::size_t L = spec.size();
    if (K >= 8 * sizeof(std::size_t) - 1)
        throw CapacityError("truncation order too large");
    const std::size_t unary_dim = std::size_t{1} << K;
    check_capacity(unary_dim, "unary control register");
    check_capacity(L, "term qudit");

    TaylorCircuit tc;
    tc.plan = plan;
    tc.system_qubits = spec.qubits();
    tc.terms = L;
    tc.slot_ops = weighted_slot_ops(spec);

    LcuCircuit &c = tc.circuit;
    c.system_dim = spec.dim();
    c.ancilla_dims.assign(K, 2);
    c.ancilla_dims.insert(c.ancilla_dims.end(), K, L);
    c.gate_count = segment_gate_count(spec.qubits(), L, K);

    // Unary divider: √((gτ)^k/k! / s) at pattern 1^k0^{K−k}.
    const double x = plan.g * plan.tau;
    Vector unary = Vector::Zero(static_cast<Eigen::Index>(unary_dim));
    std::vector<std::size_t> patterns;
    double weight = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
        if (k > 0)
            weight *= x / static_cast<double>(k);
        const std::size_t index = unary_dim - (unary_dim >> k);
        patterns.push_back(index);
        unary[static_cast<Eigen::Index>(index)] = std::sqrt(weight);
    }
    unary /= unary.norm();
    const DenseOperator v_unary = complete_unitary(unary);
    for (const std::size_t index : patterns)
        tc.unary_amplitudes.push_back(v_unary(index, 0));

    // Term qudit divider: √(α_ℓ / g).
    Vector qudit(static_cast<Eigen::Index>(L));
    for (std::size_t l = 0; l < L; ++l)
        qudit[static_cast<Eigen::Index>(l)] =
            std::sqrt(spec.terms()[l].alpha / spec.g());
    qudit /= qudit.norm();
    const DenseOperator v_qudit = complete_unitary(qudit);
    for (std::size_t l = 0; l < L; ++l)
        tc.qudit_amplitudes.push_back(v_qudit(l, 0));

    if (K == 0)
        return tc;

    const std::size_t first_qudit = 1 + K;
    c.divide.push_back({1, K, v_unary});
    for (std::size_t j = 0; j < K; ++j)
        c.divide.push_back({first_qudit + j, 1, v_qudit});
    // Slot K first, so the branch 1^k0^{K−k} applies (−iH_{ℓ₁})⋯(−iH_{ℓ_k}).
    for (std::size_t j = K; j-- > 0;)
        for (std::size_t l = 0; l < L; ++l)
            c.select.push_back(
                {{Control{1 + j, 1}, Control{first_qudit + j, l}},
                 tc.slot_ops[l]});
    for (std::size_t j = 0; j < K; ++j)
        c.combine.push_back({first_qudit + j, 1, v_qudit.adjoint()});
    c.combine.push_back({1, K, v_unary.adjoint()});
    return tc;
}

// ---------------------------------------------------------------------------
// Amplification

AmplifiedOutcome oaa_round(const LcuCircuit &circuit, const Statevector &psi) {
    Statevector state = circuit.embed(psi);
    circuit.apply(state);
    circuit.reflect(state);
    circuit.apply_adjoint(state);
    circuit.reflect(state);
    circuit.apply(state);
    const double norm = state.norm();
    // A carries an overall minus sign.
    CircuitOutcome out = renormalize(-circuit.postselect(state));
    return {std::move(out.state), out.success_prob, norm, true};
}

namespace {

/// Post-selection amplitude the padding qubit contributes (1 = no padding).
double padding_amplitude(double s) { return std::min(1.0, 0.5 * s); }

LcuCircuit padded(const TaylorCircuit &segment) {
    LcuCircuit c = segment.circuit;
    const double a = padding_amplitude(segment.plan.s);
    if (a >= 1.0)
        return c;
    Vector column(2);
    column << a, std::sqrt(std::max(0.0, 1.0 - a * a));
    c.ancilla_dims.push_back(2);
    c.divide.push_back({c.ancilla_dims.size(), 1, complete_unitary(column)});
    c.gate_count += 1;
    return c;
}

} // namespace

AmplifiedOutcome oaa_round(const TaylorCircuit &segment,
                           const Statevector &psi, OaaMode mode) {
    const LcuCircuit circuit = padded(segment);
    if (mode == OaaMode::kAuto)
        mode = circuit.total_dim() <= max_dim() ? OaaMode::kFullRegister
                                                : OaaMode::kBlock;
    if (mode == OaaMode::kFullRegister)
        return oaa_round(circuit, psi);

    if (psi.size() != circuit.system_dim)
        throw DimensionError("state does not match segment system register");
    const Matrix m = padding_amplitude(segment.plan.s) *
                     segment.postselected_block().matrix();
    const Matrix amplified = 3.0 * m - 4.0 * (m * m.adjoint() * m);
    CircuitOutcome out = renormalize(amplified * psi.amplitudes());
    return {std::move(out.state), out.success_prob,
            std::numeric_limits<double>::quiet_NaN(), false};
}

TaylorRun simulate_taylor(const HamiltonianSpec &spec, double t,
                          double epsilon, const Statevector &psi,
                          OaaMode mode) {
    if (psi.size() != spec.dim())
        throw DimensionError("state does not match Hamiltonian dimension");
    const SegmentPlan plan = plan_segments(spec, t, epsilon);
    TaylorDiagnostics diag;
    diag.r = plan.r;
    diag.K = plan.K;
    diag.s = plan.s;
    if (plan.r == 0)
        return {psi, diag};

    const TaylorCircuit segment = build_segment_circuit(spec, plan);
    const DenseOperator h = spec.matrix();
    const DenseOperator exact_segment = expm_hermitian(h, plan.tau);
    diag.segment_error = spectral_norm(
        Complex(plan.s) * segment.postselected_block() - exact_segment);
    diag.segment_gate_count = segment.gate_count();
    // W three times (with the padding rotation) and two reflections.
    diag.gate_count = plan.r * (3 * (segment.gate_count() + 1) + 2);

    Statevector state = psi;
    for (std::size_t i = 0; i < plan.r; ++i) {
        try {
            AmplifiedOutcome out = oaa_round(segment, state, mode);
            diag.success_probs.push_back(out.success_prob);
            diag.full_register = out.full_register;
            state = std::move(out.state);
        } catch (const ZeroWaveOutcome &z) {
            throw ZeroWaveOutcome(z.success_prob(), i);
        }
    }
    const Vector exact = expm_hermitian(h, t).apply(psi.amplitudes());
    diag.total_error = (state.amplitudes() - exact).norm();
    return {std::move(state), std::move(diag)};
}

} // namespace duality
