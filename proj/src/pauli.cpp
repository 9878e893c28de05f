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
#include "duality/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

PauliTerm parse_line(std::string_view line, std::size_t lineno) {
    std::size_t split = 0;
    while (split < line.size() && !is_space(line[split]))
        ++split;
    const std::string_view number = line.substr(0, split);
    const std::string_view paulis = trim(line.substr(split));

    PauliTerm term;
    const auto [ptr, ec] = std::from_chars(
        number.data(), number.data() + number.size(), term.coefficient);
    if (ec != std::errc() || ptr != number.data() + number.size())
        throw ParseError(lineno, "invalid coefficient '" +
                                     std::string(number) + "'");
    if (!std::isfinite(term.coefficient))
        throw ParseError(lineno, "coefficient must be finite");
    if (term.coefficient == 0.0)
        throw ParseError(lineno, "coefficient must be nonzero");
    if (paulis.empty())
        throw ParseError(lineno, "missing Pauli string");
    for (const char c : paulis) {
        if (is_space(c))
            throw ParseError(lineno, "unexpected extra field");
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw ParseError(lineno, std::string("unknown Pauli letter '") +
                                         c + "'");
    }
    term.paulis = std::string(paulis);
    return term;
}

} // namespace

std::vector<PauliTerm> parse_hamiltonian(std::string_view text) {
    std::vector<PauliTerm> terms;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{}
                                             : text.substr(eol + 1);
        if (const std::size_t hash = line.find('#');
            hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        PauliTerm term = parse_line(line, lineno);
        if (!terms.empty() && term.qubits() != terms.front().qubits())
            throw ParseError(lineno, "Pauli string length " +
                                         std::to_string(term.qubits()) +
                                         " differs from " +
                                         std::to_string(
                                             terms.front().qubits()));
        terms.push_back(std::move(term));
    }
    return terms;
}

std::vector<PauliTerm> load_hamiltonian(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("hamiltonian", "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hamiltonian(buf.str());
}

DenseOperator pauli_string_matrix(std::string_view paulis) {
    if (paulis.empty())
        throw DimensionError("empty Pauli string");
    if (paulis.size() >= 8 * sizeof(std::size_t))
        throw CapacityError("Pauli string too long");
    check_capacity(std::size_t{1} << paulis.size(), "pauli_string_matrix");
    // Pauli strings are monomial: one nonzero per row. Build directly rather
    // than through repeated Kronecker products.
    using namespace std::complex_literals;
    const std::size_t n = paulis.size();
    const std::size_t dim = std::size_t{1} << n;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                            static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t row = col;
        Complex phase = 1.0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t bit = n - 1 - q;
            const bool one = ((col >> bit) & 1U) != 0;
            switch (paulis[q]) {
            case 'I':
                break;
            case 'X':
                row ^= std::size_t{1} << bit;
                break;
            case 'Y':
                row ^= std::size_t{1} << bit;
                phase *= one ? Complex(-1i) : Complex(1i);
                break;
            case 'Z':
                if (one)
                    phase = -phase;
                break;
            default:
                throw ParameterError(std::string("unknown Pauli letter '") +
                                     paulis[q] + "'");
            }
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            phase;
    }
    return DenseOperator(std::move(m));
}

DenseOperator term_matrix(const PauliTerm &term) {
    return Complex(term.coefficient) * pauli_string_matrix(term.paulis);
}

HamiltonianSpec::HamiltonianSpec(std::vector<WeightedUnitary> terms,
                                 std::size_t qubits)
    : terms_(std::move(terms)), qubits_(qubits) {
    if (terms_.empty())
        throw EmptyHamiltonianError("Hamiltonian has no terms");
    for (const auto &t : terms_) {
        if (!(t.alpha > 0.0) || !std::isfinite(t.alpha))
            throw ParameterError("term weight must be positive and finite");
        if (t.unitary.dim() != dim())
            throw DimensionError("term dimension does not match qubit count");
        if (!t.unitary.is_unitary())
            throw UnitarityError("term '" + t.label + "' is not unitary");
        g_ += t.alpha;
        h_ = std::max(h_, t.alpha);
    }
}

DenseOperator HamiltonianSpec::matrix() const {
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim()),
                              static_cast<Eigen::Index>(dim()));
    for (const auto &t : terms_)
        sum += t.alpha * t.unitary.matrix();
    return DenseOperator(std::move(sum));
}

HamiltonianSpec alpha_normalize(std::span<const PauliTerm> terms) {
    if (terms.empty())
        throw EmptyHamiltonianError("Hamiltonian has no terms");
    const std::size_t n = terms.front().qubits();
    std::vector<WeightedUnitary> out;
    out.reserve(terms.size());
    for (const PauliTerm &t : terms) {
        if (t.qubits() != n)
            throw DimensionError("mixed Pauli string lengths");
        if (!std::isfinite(t.coefficient) || t.coefficient == 0.0)
            throw ParameterError("coefficient must be finite and nonzero");
        const double sign = t.coefficient < 0.0 ? -1.0 : 1.0;
        out.push_back({std::abs(t.coefficient),
                       Complex(sign) * pauli_string_matrix(t.paulis),
                       (sign < 0.0 ? "-" : "") + t.paulis});
    }
    return HamiltonianSpec(std::move(out), n);
}

} // namespace duality
