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
#include <random>

#include "duality/errors.hpp"
#include "duality/product_formulas.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace duality;

namespace {

double error_vs_exact(const DenseOperator &u, double t) {
    return oracle::spectral_norm(u.matrix() - oracle::expm(oracle::tfim(), t));
}

template <class F> double slope_over(const std::vector<double> &ts, F approx) {
    std::vector<double> errs;
    for (const double t : ts)
        errs.push_back(error_vs_exact(approx(t), t));
    return oracle::loglog_slope(ts, errs);
}

const std::vector<double> kLow{0.05, 0.1, 0.2, 0.4};
const std::vector<double> kHigh{0.2, 0.4, 0.8};

} // namespace

TEST_CASE("suzuki basics") {
    const HamiltonianSpec one = fixtures::single("0.7 XY");
    for (const double t : {0.1, 1.0, -2.5})
        CHECK(max_abs_diff(suzuki(one, t, 1), expm_hermitian(one.matrix(), t)) < 1e-14);

    const HamiltonianSpec spec = fixtures::tfim();
    for (int chi = 1; chi <= 3; ++chi)
        CHECK(max_abs_diff(suzuki(spec, 0.0, chi), DenseOperator::identity(4)) == 0.0);

    CHECK(suzuki_fraction(2) == doctest::Approx(0.41449077179437573).epsilon(1e-15));
    CHECK(suzuki_fraction(2) == doctest::Approx(1.0 / (4.0 - std::cbrt(4.0))));
    CHECK_THROWS_AS((void)suzuki(spec, 0.1, 0), ParameterError);
    CHECK_THROWS_AS((void)suzuki_fraction(1), ParameterError);
    CHECK_THROWS_AS((void)suzuki_power(spec, 0.1, 1, 0), ParameterError);
    CHECK(suzuki_exponential_count(3, 1) == 6);
    CHECK(suzuki_exponential_count(3, 2) == 30);
}

TEST_CASE("S_1 is the symmetric term product") {
    const HamiltonianSpec spec = fixtures::tfim();
    const double t = 0.3;
    Matrix expected = Matrix::Identity(4, 4);
    const std::vector<std::pair<double, std::string>> terms{
        {1.0, "ZZ"}, {0.5, "XI"}, {0.5, "IX"}};
    for (const auto &[a, s] : terms)
        expected = expected * oracle::expm(a * oracle::pauli_string(s), 0.5 * t);
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        expected = expected * oracle::expm(it->first * oracle::pauli_string(it->second), 0.5 * t);
    CHECK((suzuki(spec, t, 1).matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("suzuki unitarity and time reversal on random specs") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> time(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const HamiltonianSpec spec = fixtures::random_spec(1 + trial % 3, 2 + trial % 3, rng);
        for (int chi = 1; chi <= 3; ++chi) {
            const double t = time(rng);
            const DenseOperator s = suzuki(spec, t, chi);
            CHECK(s.is_unitary(1e-10));
            CHECK(max_abs_diff(suzuki(spec, -t, chi), s.adjoint()) < 1e-10);
        }
    }
}

TEST_CASE("suzuki_power is the r-fold product") {
    const HamiltonianSpec spec = fixtures::tfim();
    const DenseOperator step = suzuki(spec, 0.25, 2);
    CHECK(max_abs_diff(suzuki_power(spec, 1.0, 2, 4), step * step * step * step) < 1e-14);
}

TEST_CASE("multiproduct_params") {
    SUBCASE("k = 1, gamma = 0.8") {
        const auto p = multiproduct_params(1, 0.8);
        CHECK(p.ells == std::vector<std::size_t>{1, 5});
        REQUIRE(p.coeffs.size() == 2);
        CHECK(p.coeffs[0] == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
        CHECK(p.coeffs[1] == doctest::Approx(25.0 / 24.0).epsilon(1e-15));
        CHECK(p.abs_sum() == doctest::Approx(26.0 / 24.0).epsilon(1e-15));
        // Both weightings coincide for k = 1.
        const auto lag = multiproduct_params(1, 0.8, MultiProductWeights::kLagrange);
        CHECK(lag.coeffs[0] == doctest::Approx(p.coeffs[0]).epsilon(1e-15));
    }
    SUBCASE("weights sum to one for both schemes") {
        for (int k = 1; k <= 4; ++k)
            for (const double gamma : {0.6, 0.8, 1.0})
                for (const auto w : {MultiProductWeights::kOrderMatched,
                                     MultiProductWeights::kLagrange}) {
                    const auto p = multiproduct_params(k, gamma, w);
                    CHECK(p.ells.size() == static_cast<std::size_t>(k + 1));
                    CHECK(p.ells.back() ==
                          static_cast<std::size_t>(std::ceil(std::exp(gamma * (k + 1)))));
                    double sum = 0.0;
                    for (const double c : p.coeffs)
                        sum += c;
                    CHECK(std::abs(sum - 1.0) <= 1e-12);
                }
    }
    SUBCASE("Lagrange weights against the long-double formula") {
        const auto p = multiproduct_params(3, 0.8, MultiProductWeights::kLagrange);
        const auto ref = oracle::lagrange_weights({1, 2, 3, 25});
        for (std::size_t q = 0; q < 4; ++q)
            CHECK(p.coeffs[q] == doctest::Approx(static_cast<double>(ref[q])).epsilon(1e-13));
    }
    SUBCASE("order-matched weights cancel the ell^-2k .. ell^-2(2k-1) moments") {
        for (int k = 1; k <= 3; ++k) {
            const auto p = multiproduct_params(k, 0.8);
            for (int m = k; m <= 2 * k - 1; ++m) {
                long double moment = 0.0L;
                for (std::size_t q = 0; q < p.ells.size(); ++q)
                    moment += p.coeffs[q] *
                              std::pow(static_cast<long double>(p.ells[q]), -2.0L * m);
                CHECK(std::abs(static_cast<double>(moment)) < 1e-13);
            }
        }
    }
    SUBCASE("small gamma") {
        CHECK(multiproduct_params(1, 0.05).ells == std::vector<std::size_t>{1, 2});
        CHECK_THROWS_AS((void)multiproduct_params(2, 0.05), ParameterError);
        CHECK_THROWS_AS((void)multiproduct_params(0, 0.8), ParameterError);
        CHECK_THROWS_AS((void)multiproduct_params(1, -1.0), ParameterError);
    }
}

TEST_CASE("multiproduct_gate") {
    const HamiltonianSpec spec = fixtures::tfim();
    const MultiProductGate zero = multiproduct_gate(spec, 0.0, 2);
    CHECK(max_abs_diff(zero.matrix(), DenseOperator::identity(4)) < 1e-15);

    const MultiProductGate m = multiproduct_gate(spec, 0.3, 2);
    CHECK(m.gate.s_bar() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.scale == doctest::Approx(m.params.abs_sum()));
    Matrix direct = Matrix::Zero(4, 4);
    for (std::size_t q = 0; q < m.params.ells.size(); ++q) {
        const std::size_t ell = m.params.ells[q];
        DenseOperator u = suzuki(spec, 0.3 / static_cast<double>(ell), 2);
        Matrix power = Matrix::Identity(4, 4);
        for (std::size_t i = 0; i < ell; ++i)
            power = power * u.matrix();
        direct += m.params.coeffs[q] * power;
    }
    CHECK((m.matrix().matrix() - direct).cwiseAbs().maxCoeff() < 1e-12);

    const double m11 = error_vs_exact(multiproduct_gate(spec, 0.1, 1).matrix(), 0.1);
    const double s1 = error_vs_exact(suzuki(spec, 0.1, 1), 0.1);
    CHECK(m11 < s1);
}

TEST_CASE("order slopes against the series oracle") {
    const HamiltonianSpec spec = fixtures::tfim();
    CHECK(slope_over(kLow, [&](double t) { return suzuki(spec, t, 1); }) ==
          doctest::Approx(3.0).epsilon(0.1));
    CHECK(slope_over(kLow, [&](double t) { return suzuki(spec, t, 2); }) ==
          doctest::Approx(5.0).epsilon(0.06));
    CHECK(slope_over(kLow, [&](double t) {
              return multiproduct_gate(spec, t, 1).matrix();
          }) == doctest::Approx(5.0).epsilon(0.06));
    const double m22 =
        slope_over(kHigh, [&](double t) { return multiproduct_gate(spec, t, 2).matrix(); });
    CHECK(std::abs(m22 - 9.0) <= 0.5);
}

TEST_CASE("Lagrange weights stop at order 7 for k = 2") {
    // Documents why order-matched weights are the default: Richardson in
    // ell^-2 cancels only the ell^-2 and ell^-4 terms, but S_2 errors start
    // at ell^-4.
    const HamiltonianSpec spec = fixtures::tfim();
    const auto lagrange = multiproduct_params(2, 0.8, MultiProductWeights::kLagrange);
    const double s = slope_over(
        kHigh, [&](double t) { return multiproduct_gate(spec, t, lagrange).matrix(); });
    CHECK(std::abs(s - 7.0) <= 0.5);
}

TEST_CASE("simulate_multiproduct") {
    std::mt19937_64 rng(3);
    SUBCASE("single-term evolution is exact") {
        const HamiltonianSpec one = fixtures::single("0.8 ZX");
        const Statevector psi = Statevector::random(4, rng);
        for (const std::size_t r : {1u, 3u, 7u})
            CHECK(simulate_multiproduct(one, 1.3, r, 1, 0.8, psi).error_vs_oracle <= 1e-10);
    }
    SUBCASE("beats plain S_1 and converges like r^-4") {
        const HamiltonianSpec spec = fixtures::tfim();
        const Statevector psi = Statevector::random(4, rng);
        const MultiProductRun r10 = simulate_multiproduct(spec, 1.0, 10, 1, 0.8, psi);
        const Vector s1 = suzuki_power(spec, 1.0, 1, 10).apply(psi.amplitudes());
        const Vector exact = oracle::expm(oracle::tfim(), 1.0) * psi.amplitudes();
        CHECK(r10.error_vs_oracle < (s1 - exact).norm());

        const MultiProductRun r20 = simulate_multiproduct(spec, 1.0, 20, 1, 0.8, psi);
        CHECK(r10.error_vs_oracle / r20.error_vs_oracle >= 10.0);
        CHECK(r10.success_probs.size() == 10);
        double product = 1.0;
        for (const double p : r10.success_probs)
            product *= p;
        CHECK(r10.cumulative_success == doctest::Approx(product).epsilon(1e-14));
        CHECK((r10.state.amplitudes() - exact).norm() ==
              doctest::Approx(r10.error_vs_oracle).epsilon(1e-12));
    }
    SUBCASE("circuit output equals the normalized direct sum") {
        const HamiltonianSpec spec = fixtures::tfim();
        for (int k = 1; k <= 2; ++k) {
            const MultiProductGate m = multiproduct_gate(spec, 0.4, k);
            const Statevector psi = Statevector::random(4, rng);
            const CircuitOutcome out = run_duality_circuit(m.gate, psi);
            CHECK(oracle::fidelity(out.state.amplitudes(),
                                   m.matrix().matrix() * psi.amplitudes()) >= 1.0 - 1e-10);
        }
    }
    SUBCASE("errors") {
        const HamiltonianSpec spec = fixtures::tfim();
        const Statevector psi = Statevector::random(4, rng);
        CHECK_THROWS_AS((void)simulate_multiproduct(spec, 1.0, 0, 1, 0.8, psi),
                        ParameterError);
        CHECK_THROWS_AS(
            (void)simulate_multiproduct(spec, 1.0, 1, 1, 0.8, Statevector::random(2, rng)),
            DimensionError);
    }
}
