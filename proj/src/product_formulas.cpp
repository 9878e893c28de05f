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
#include "duality/product_formulas.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "duality/errors.hpp"

namespace duality {

namespace {

/**
 * An operator stored as its offset from the identity, X = I + delta.
 *
 * Product formulas multiply hundreds of near-identity factors. Keeping only
 * the offsets makes the accumulated rounding scale with the total rotation
 * angle instead of the factor count, which is what lets high-order error
 * terms near 1e-14 be resolved.
 */
struct NearIdentity {
    Matrix delta;

    /// (I + a)(I + b) = I + (a + b + ab).
    friend NearIdentity operator*(const NearIdentity &a,
                                  const NearIdentity &b) {
        return {a.delta + b.delta + a.delta * b.delta};
    }

    [[nodiscard]] NearIdentity power(std::size_t n) const {
        NearIdentity result{Matrix::Zero(delta.rows(), delta.cols())};
        NearIdentity base = *this;
        while (n > 0) {
            if ((n & 1U) != 0)
                result = result * base;
            n >>= 1U;
            if (n > 0)
                base = base * base;
        }
        return result;
    }

    [[nodiscard]] DenseOperator full() const {
        return DenseOperator(
            Matrix::Identity(delta.rows(), delta.cols()) + delta);
    }
};

/// e^{−iαUθ} − I for an involution U: −2sin²(αθ/2)·I − i·sin(αθ)·U.
NearIdentity term_exponential(const WeightedUnitary &term, double theta) {
    const double angle = term.alpha * theta;
    const double half = std::sin(0.5 * angle);
    Matrix delta = Complex(0.0, -std::sin(angle)) * term.unitary.matrix();
    delta.diagonal().array() += -2.0 * half * half;
    return {std::move(delta)};
}

NearIdentity suzuki_first(const HamiltonianSpec &spec, double t) {
    const auto d = static_cast<Eigen::Index>(spec.dim());
    NearIdentity out{Matrix::Zero(d, d)};
    const auto &terms = spec.terms();
    for (const auto &term : terms)
        out = out * term_exponential(term, 0.5 * t);
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        out = out * term_exponential(*it, 0.5 * t);
    return out;
}

NearIdentity suzuki_near_identity(const HamiltonianSpec &spec, double t,
                                  int chi) {
    if (chi == 1)
        return suzuki_first(spec, t);
    const double s = suzuki_fraction(chi);
    const NearIdentity outer = suzuki_near_identity(spec, s * t, chi - 1);
    const NearIdentity middle =
        suzuki_near_identity(spec, (1.0 - 4.0 * s) * t, chi - 1);
    const NearIdentity pair = outer * outer;
    return pair * middle * pair;
}

void require_order(int chi) {
    if (chi < 1)
        throw ParameterError("Suzuki order chi must be >= 1, got " +
                             std::to_string(chi));
}

} // namespace

double suzuki_fraction(int chi) {
    if (chi < 2)
        throw ParameterError("suzuki_fraction needs chi >= 2");
    return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * chi - 1.0)));
}

DenseOperator suzuki(const HamiltonianSpec &spec, double t, int chi) {
    require_order(chi);
    return suzuki_near_identity(spec, t, chi).full();
}

DenseOperator suzuki_power(const HamiltonianSpec &spec, double t, int chi,
                           std::size_t r) {
    require_order(chi);
    if (r < 1)
        throw ParameterError("segment count must be >= 1");
    return suzuki_near_identity(spec, t / static_cast<double>(r), chi)
        .power(r)
        .full();
}

std::size_t suzuki_exponential_count(std::size_t terms, int chi) {
    require_order(chi);
    std::size_t count = 2 * terms;
    for (int i = 1; i < chi; ++i)
        count *= 5;
    return count;
}

// ---------------------------------------------------------------------------
// Multi-product formulas

double MultiProductParams::abs_sum() const {
    double s = 0.0;
    for (const double c : coeffs)
        s += std::abs(c);
    return s;
}

MultiProductParams multiproduct_params(int k, double gamma,
                                       MultiProductWeights weights) {
    if (k < 1)
        throw ParameterError("multi-product order k must be >= 1");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ParameterError("gamma must be positive and finite");
    const double top = std::ceil(std::exp(gamma * (k + 1)));
    if (!(top < 1e12))
        throw ParameterError("gamma too large: l_{k+1} = " +
                             std::to_string(top));

    MultiProductParams p;
    p.k = k;
    p.gamma = gamma;
    p.weights = weights;
    for (int q = 1; q <= k; ++q)
        p.ells.push_back(static_cast<std::size_t>(q));
    p.ells.push_back(static_cast<std::size_t>(top));
    if (p.ells.back() <= static_cast<std::size_t>(k))
        throw ParameterError("gamma too small: l_{k+1} = " +
                             std::to_string(p.ells.back()) +
                             " collides with 1..k");

    const std::size_t n = p.ells.size();
    p.coeffs.resize(n);
    if (weights == MultiProductWeights::kLagrange) {
        for (std::size_t q = 0; q < n; ++q) {
            const double lq2 = static_cast<double>(p.ells[q] * p.ells[q]);
            double c = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != q)
                    c *= lq2 / (lq2 - static_cast<double>(p.ells[j] *
                                                           p.ells[j]));
            p.coeffs[q] = c;
        }
    } else {
        // Divided-difference weights in x = ℓ^{−2} scaled by x^{−k}, so that
        // Σ C_q x_q^m = 0 for m = k … 2k−1; normalized to Σ C_q = 1.
        double total = 0.0;
        for (std::size_t q = 0; q < n; ++q) {
            const double lq = static_cast<double>(p.ells[q]);
            const double xq = 1.0 / (lq * lq);
            double w = std::pow(lq, 2.0 * k);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == q)
                    continue;
                const double lj = static_cast<double>(p.ells[j]);
                w /= xq - 1.0 / (lj * lj);
            }
            p.coeffs[q] = w;
            total += w;
        }
        for (double &c : p.coeffs)
            c /= total;
    }
    return p;
}

DenseOperator MultiProductGate::matrix() const {
    return Complex(scale) * gate.matrix();
}

MultiProductGate multiproduct_gate(const HamiltonianSpec &spec, double t,
                                   const MultiProductParams &params) {
    const double scale = params.abs_sum();
    std::vector<Complex> coeffs;
    std::vector<DenseOperator> unitaries;
    for (std::size_t q = 0; q < params.ells.size(); ++q) {
        const std::size_t ell = params.ells[q];
        coeffs.emplace_back(params.coeffs[q] / scale);
        unitaries.push_back(
            suzuki_near_identity(spec, t / static_cast<double>(ell), params.k)
                .power(ell)
                .full());
    }
    return {make_duality_gate(std::move(coeffs), std::move(unitaries)), scale,
            params};
}

MultiProductGate multiproduct_gate(const HamiltonianSpec &spec, double t,
                                   int k, double gamma,
                                   MultiProductWeights weights) {
    return multiproduct_gate(spec, t, multiproduct_params(k, gamma, weights));
}

MultiProductRun simulate_multiproduct(const HamiltonianSpec &spec, double t,
                                      std::size_t r,
                                      const MultiProductParams &params,
                                      const Statevector &psi) {
    if (r < 1)
        throw ParameterError("segment count r must be >= 1");
    if (psi.size() != spec.dim())
        throw DimensionError("state does not match Hamiltonian dimension");
    const MultiProductGate segment =
        multiproduct_gate(spec, t / static_cast<double>(r), params);

    std::size_t per_segment = 2;
    for (const std::size_t ell : params.ells)
        per_segment += ell * suzuki_exponential_count(spec.size(), params.k);

    Statevector state = psi;
    std::vector<double> probs;
    double cumulative = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
        try {
            CircuitOutcome out = run_duality_circuit(segment.gate, state);
            cumulative *= out.success_prob;
            probs.push_back(out.success_prob);
            state = std::move(out.state);
        } catch (const ZeroWaveOutcome &z) {
            throw ZeroWaveOutcome(z.success_prob(), i);
        }
    }
    const Vector exact = expm_hermitian(spec.matrix(), t).apply(psi.amplitudes());
    const double error = (state.amplitudes() - exact).norm();
    return {std::move(state), cumulative, error, std::move(probs),
            per_segment * r};
}

MultiProductRun simulate_multiproduct(const HamiltonianSpec &spec, double t,
                                      std::size_t r, int k, double gamma,
                                      const Statevector &psi) {
    return simulate_multiproduct(spec, t, r, multiproduct_params(k, gamma),
                                 psi);
}

} // namespace duality
