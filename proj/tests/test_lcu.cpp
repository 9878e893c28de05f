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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "duality/errors.hpp"
#include "duality/lcu.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace duality;

namespace {

DenseOperator X() { return DenseOperator(oracle::pauli('X')); }
DenseOperator Z() { return DenseOperator(oracle::pauli('Z')); }
DenseOperator I2() { return DenseOperator::identity(2); }

GeneralizedGate projector_gate() { return make_duality_gate({0.5, 0.5}, {I2(), Z()}); }

Statevector ket(std::size_t i) { return Statevector::basis({2}, i); }
Statevector plus() {
    Vector v(2);
    v << 1.0, 1.0;
    return Statevector::normalized(v);
}

void check_unitary_with_column(const Vector &col) {
    const DenseOperator v = complete_unitary(col);
    const auto n = col.size();
    CHECK((v.matrix().adjoint() * v.matrix() - Matrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK((v.matrix().col(0) - col).cwiseAbs().maxCoeff() <= 1e-12);
}

} // namespace

TEST_CASE("complete_unitary") {
    SUBCASE("e0 gives the identity") {
        Vector e0 = Vector::Zero(4);
        e0[0] = 1.0;
        CHECK(max_abs_diff(complete_unitary(e0), DenseOperator::identity(4)) == 0.0);
    }
    SUBCASE("balanced qubit column, deterministic") {
        Vector col(2);
        col << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        check_unitary_with_column(col);
        CHECK(max_abs_diff(complete_unitary(col), complete_unitary(col)) == 0.0);
    }
    SUBCASE("complex column") {
        Vector col(2);
        col << 0.6, Complex(0.0, 0.8);
        check_unitary_with_column(col);
    }
    SUBCASE("random columns, including vanishing first entry") {
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 20; ++trial) {
            Vector col(1 + trial % 7);
            for (Eigen::Index i = 0; i < col.size(); ++i)
                col[i] = random_gaussian(rng);
            if (trial % 3 == 0)
                col[0] = 0.0;
            if (col.norm() == 0.0)
                continue;
            col.normalize();
            check_unitary_with_column(col);
        }
    }
    SUBCASE("non-normalized input") {
        Vector col(2);
        col << 1.0, 1.0;
        CHECK_THROWS_AS((void)complete_unitary(col), NormalizationError);
    }
    SUBCASE("row completion") {
        Vector row(3);
        row << 0.6, Complex(0.0, 0.48), 0.64;
        const DenseOperator w = complete_unitary_row(row);
        CHECK((w.matrix().row(0).transpose() - row).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(w.is_unitary(1e-12));
    }
}

TEST_CASE("make_duality_gate") {
    std::mt19937_64 rng(2);
    const DenseOperator u0 = random_unitary(4, rng);
    const GeneralizedGate single = make_duality_gate({1.0}, {u0});
    CHECK(max_abs_diff(single.matrix(), u0) == 0.0);

    Matrix proj = Matrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    CHECK(max_abs_diff(projector_gate().matrix(), DenseOperator(proj)) == 0.0);
    CHECK(projector_gate().s_bar() == 1.0);

    CHECK_THROWS_AS((void)make_duality_gate({0.7, 0.5}, {I2(), Z()}), CoefficientBoundError);
    CHECK_THROWS_AS((void)make_duality_gate({0.5}, {I2(), Z()}), DimensionError);
    CHECK_THROWS_AS((void)make_duality_gate({}, {}), DimensionError);
    CHECK_THROWS_AS((void)make_duality_gate({0.5, 0.5}, {I2(), DenseOperator::identity(4)}),
                    DimensionError);
    CHECK_THROWS_AS(
        (void)make_duality_gate({0.5}, {DenseOperator(2.0 * Matrix::Identity(2, 2))}),
        UnitarityError);
    CHECK_THROWS_AS((void)make_duality_gate({Complex(std::nan(""), 0.0)}, {I2()}),
                    NumericError);
    // Exactly at the bound is allowed.
    CHECK_NOTHROW((void)make_duality_gate({0.5, Complex(0.0, 0.5)}, {I2(), X()}));
}

TEST_CASE("apply_direct") {
    std::mt19937_64 rng(6);
    const DenseOperator u0 = random_unitary(2, rng);
    const Statevector psi = Statevector::random(2, rng);
    const GeneralizedGate id = make_duality_gate({1.0}, {I2()});
    CHECK((apply_direct(id, psi) - psi.amplitudes()).norm() == 0.0);

    CHECK(apply_direct(projector_gate(), ket(1)).norm() == 0.0);
    const Vector half = apply_direct(projector_gate(), plus());
    CHECK(half.squaredNorm() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(half[0] - 1.0 / std::sqrt(2.0)) < 1e-15);

    CHECK_THROWS_AS((void)apply_direct(projector_gate(), Statevector::random(4, rng)),
                    DimensionError);
}

TEST_CASE("run_duality_circuit on the projector gate") {
    const CircuitOutcome zero = run_duality_circuit(projector_gate(), ket(0));
    CHECK(zero.success_prob == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(oracle::fidelity(zero.state.amplitudes(), ket(0).amplitudes()) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const CircuitOutcome half = run_duality_circuit(projector_gate(), plus());
    CHECK(half.success_prob == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(oracle::fidelity(half.state.amplitudes(), ket(0).amplitudes()) ==
          doctest::Approx(1.0).epsilon(1e-14));

    try {
        (void)run_duality_circuit(projector_gate(), ket(1));
        FAIL("expected ZeroWaveOutcome");
    } catch (const ZeroWaveOutcome &z) {
        CHECK(z.success_prob() < 1e-14);
    }
}

TEST_CASE("circuit matches direct evaluation on random gates") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<std::size_t> terms(1, 8), qubits(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = std::size_t{1} << qubits(rng);
        const GeneralizedGate gate = fixtures::random_gate(terms(rng), dim, rng);
        const Statevector psi = Statevector::random(dim, rng);

        Vector direct = Vector::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < gate.size(); ++i)
            direct += gate.coeffs()[i] * (gate.unitaries()[i].matrix() * psi.amplitudes());
        const CircuitOutcome out = run_duality_circuit(gate, psi);
        CHECK(oracle::fidelity(out.state.amplitudes(), direct) >= 1.0 - 1e-10);
        CHECK(std::abs(out.success_prob -
                       direct.squaredNorm() / (gate.s_bar() * gate.s_bar())) <= 1e-10);
        // ‖Σ c U‖ ≤ Σ|c|.
        CHECK(oracle::spectral_norm(gate.matrix().matrix()) <= gate.s_bar() + 1e-12);
    }
}

TEST_CASE("the circuit output is L|psi> itself, phase included") {
    std::mt19937_64 rng(77);
    const GeneralizedGate gate = fixtures::random_gate(3, 4, rng);
    const Statevector psi = Statevector::random(4, rng);
    const LcuCircuit c = build_duality_circuit(gate);
    Statevector state = c.embed(psi);
    c.apply(state);
    const Vector expected = apply_direct(gate, psi) / gate.s_bar();
    CHECK((c.postselect(state) - expected).norm() < 1e-14);
    CHECK(c.gate_count == 2 + 3);

    c.apply_adjoint(state);
    CHECK((c.postselect(state) - psi.amplitudes()).norm() < 1e-14);
}

TEST_CASE("default divider and (WV)00") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const GeneralizedGate gate = fixtures::random_gate(1 + trial % 6, 2, rng);
        const DividerSpec d = default_divider(gate);
        CHECK(std::abs(d.p.norm() - 1.0) < 1e-12);
        for (Eigen::Index i = 0; i < d.p.size(); ++i)
            CHECK(std::abs(d.p[i] - std::sqrt(std::abs(gate.coeffs()[static_cast<std::size_t>(i)]) /
                                              gate.s_bar())) < 1e-15);
        const Matrix wv = complete_unitary_row(d.q).matrix() * complete_unitary(d.p).matrix();
        CHECK(std::abs(d.coefficients().sum() - wv(0, 0)) <= 1e-12);
    }
}

TEST_CASE("custom dividers") {
    std::mt19937_64 rng(31);
    const GeneralizedGate gate = fixtures::random_gate(4, 4, rng);
    const Statevector psi = Statevector::random(4, rng);
    const double best = run_duality_circuit(gate, psi).success_prob;
    const Vector direct = apply_direct(gate, psi);

    for (int alt = 0; alt < 50; ++alt) {
        Vector p(4), q(4);
        for (Eigen::Index i = 0; i < 4; ++i)
            p[i] = random_gaussian(rng);
        p.normalize();
        for (Eigen::Index i = 0; i < 4; ++i)
            q[i] = gate.coeffs()[static_cast<std::size_t>(i)] / p[i];
        q.normalize();
        const CircuitOutcome out = run_duality_circuit(gate, psi, make_divider(p, q));
        CHECK(out.success_prob <= best + 1e-12);
        CHECK(oracle::fidelity(out.state.amplitudes(), direct) >= 1.0 - 1e-10);
    }

    Vector p = Vector::Constant(4, 0.5), q = Vector::Constant(4, 0.5);
    q[1] = -0.5;
    CHECK_THROWS_AS((void)run_duality_circuit(gate, psi, make_divider(p, q)),
                    ParameterError);
    CHECK_THROWS_AS((void)make_divider(Vector::Constant(4, 0.6), q), NormalizationError);
    CHECK_THROWS_AS((void)make_divider(Vector::Constant(2, std::sqrt(0.5)), q),
                    DimensionError);
}

TEST_CASE("identity is an extreme point of the unitary mixtures") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const DenseOperator id = DenseOperator::identity(3);
        DenseOperator far = random_unitary(3, rng);
        while (oracle::spectral_norm((far - id).matrix()) < 0.1)
            far = random_unitary(3, rng);
        const double r0 = 0.1 + 0.9 * unit(rng);
        const double r1 = (1.0 - r0) * unit(rng);
        const double r2 = 1.0 - r0 - r1;
        const Matrix mix = r0 * far.matrix() + r1 * random_unitary(3, rng).matrix() +
                           r2 * Matrix::Identity(3, 3);
        CHECK(oracle::spectral_norm(mix - Matrix::Identity(3, 3)) > 1e-3);
    }
}

TEST_CASE("decompose_operator round trip") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a(4, 4);
        for (Eigen::Index i = 0; i < a.size(); ++i)
            a.data()[i] = random_gaussian(rng);
        const auto [gate, scale] = decompose_operator(DenseOperator(a));
        CHECK(gate.size() == 4);
        CHECK(gate.s_bar() <= 1.0 + 1e-12);
        CHECK((scale * gate.matrix().matrix() - a).cwiseAbs().maxCoeff() < 1e-12);
    }
    const auto [zero_gate, zero_scale] = decompose_operator(DenseOperator::zero(2));
    CHECK(zero_scale == 0.0);
    CHECK(zero_gate.matrix().matrix().norm() == 0.0);
}
