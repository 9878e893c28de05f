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
// Shared random inputs for the tests.
#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "duality/lcu.hpp"
#include "duality/pauli.hpp"

namespace fixtures {

inline std::vector<duality::PauliTerm> random_terms(std::size_t qubits,
                                                    std::size_t count,
                                                    std::mt19937_64 &rng) {
    static constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> mag(0.1, 1.0);
    std::bernoulli_distribution negative(0.5);
    std::vector<duality::PauliTerm> terms;
    for (std::size_t l = 0; l < count; ++l) {
        duality::PauliTerm t;
        t.coefficient = negative(rng) ? -mag(rng) : mag(rng);
        for (std::size_t q = 0; q < qubits; ++q)
            t.paulis.push_back(kLetters[static_cast<std::size_t>(letter(rng))]);
        terms.push_back(std::move(t));
    }
    return terms;
}

inline duality::HamiltonianSpec random_spec(std::size_t qubits, std::size_t count,
                                            std::mt19937_64 &rng) {
    return duality::alpha_normalize(random_terms(qubits, count, rng));
}

inline duality::HamiltonianSpec tfim() {
    return duality::alpha_normalize(
        duality::parse_hamiltonian("1.0 ZZ\n0.5 XI\n0.5 IX\n"));
}

inline duality::HamiltonianSpec single(const std::string &text) {
    return duality::alpha_normalize(duality::parse_hamiltonian(text));
}

/// Random gate with Σ|c| in [0.5, 1].
inline duality::GeneralizedGate random_gate(std::size_t terms, std::size_t dim,
                                            std::mt19937_64 &rng) {
    std::vector<duality::Complex> c(terms);
    double total = 0.0;
    for (auto &x : c) {
        x = duality::random_gaussian(rng);
        total += std::abs(x);
    }
    std::uniform_real_distribution<double> shrink(0.5, 1.0);
    const double scale = shrink(rng) / total;
    for (auto &x : c)
        x *= scale;
    std::vector<duality::DenseOperator> u;
    for (std::size_t i = 0; i < terms; ++i)
        u.push_back(duality::random_unitary(dim, rng));
    return duality::make_duality_gate(std::move(c), std::move(u));
}

} // namespace fixtures
