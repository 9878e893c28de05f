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
#include "duality/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "duality/errors.hpp"
#include "duality/lcu.hpp"
#include "duality/numerics.hpp"
#include "duality/pauli.hpp"
#include "duality/product_formulas.hpp"
#include "duality/taylor.hpp"

namespace duality {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CheckResult at_most(std::string name, double measured, double bound) {
    return {std::move(name), measured, "<= " + fmt(bound), measured <= bound};
}

CheckResult at_least(std::string name, double measured, double bound) {
    return {std::move(name), measured, ">= " + fmt(bound), measured >= bound};
}

CheckResult within(std::string name, double measured, double target,
                   double half_width) {
    return {std::move(name), measured, fmt(target) + " ± " + fmt(half_width),
            std::abs(measured - target) <= half_width};
}

HamiltonianSpec test_hamiltonian() {
    const auto terms = parse_hamiltonian("1.0 ZZ\n0.5 XI\n0.5 IX\n");
    return alpha_normalize(terms);
}

HamiltonianSpec random_spec(std::size_t qubits, std::size_t count,
                            std::mt19937_64 &rng) {
    static constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> mag(0.1, 1.0);
    std::bernoulli_distribution sign(0.5);
    std::vector<PauliTerm> terms;
    for (std::size_t l = 0; l < count; ++l) {
        PauliTerm term;
        term.coefficient = sign(rng) ? mag(rng) : -mag(rng);
        for (std::size_t q = 0; q < qubits; ++q)
            term.paulis.push_back(kLetters[static_cast<std::size_t>(letter(rng))]);
        terms.push_back(std::move(term));
    }
    return alpha_normalize(terms);
}

GeneralizedGate random_gate(std::size_t terms, std::size_t dim,
                            std::mt19937_64 &rng) {
    std::vector<Complex> coeffs(terms);
    double total = 0.0;
    for (auto &c : coeffs) {
        c = random_gaussian(rng);
        total += std::abs(c);
    }
    std::uniform_real_distribution<double> shrink(0.5, 1.0);
    const double scale = shrink(rng) / total;
    for (auto &c : coeffs)
        c *= scale;
    std::vector<DenseOperator> us;
    for (std::size_t i = 0; i < terms; ++i)
        us.push_back(random_unitary(dim, rng));
    return make_duality_gate(std::move(coeffs), std::move(us));
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> numerics_suite(const tol::Profile &, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double group = 0.0, conjugation = 0.0, unitary = 0.0, tensor_gap = 0.0;
    std::uniform_real_distribution<double> time(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t dim = trial % 2 == 0 ? 4 : 8;
        const DenseOperator h = random_hermitian(dim, rng);
        const double t1 = time(rng), t2 = time(rng);
        const DenseOperator e1 = expm_hermitian(h, t1);
        group = std::max(group, max_abs_diff(e1 * expm_hermitian(h, t2),
                                             expm_hermitian(h, t1 + t2)));
        const DenseOperator g = random_unitary(dim, rng);
        conjugation = std::max(
            conjugation,
            max_abs_diff(expm_hermitian(g * h * g.adjoint(), t1),
                         g * e1 * g.adjoint()));
        unitary = std::max(
            unitary, max_abs_diff(e1.adjoint() * e1, DenseOperator::identity(dim)));
        const DenseOperator a = random_hermitian(3, rng);
        const DenseOperator b(a.matrix().block(0, 0, 2, 2) * Complex(0.0, 1.0));
        tensor_gap = std::max(tensor_gap, std::abs(spectral_norm(tensor(a, b)) -
                                                   spectral_norm(a) *
                                                       spectral_norm(b)));
    }
    return {
        at_most("expm group property", group, tol::kUnitarity),
        at_most("expm commutes with unitary conjugation", conjugation,
                tol::kUnitarity),
        at_most("expm unitarity", unitary, tol::kUnitarity),
        at_most("tensor norm multiplicativity", tensor_gap, 1e-9),
    };
}

std::vector<CheckResult> pauli_suite(const tol::Profile &, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double involution = 0.0, unit_norm = 0.0, h_bound = -1.0, hermitian = 0.0;
    std::vector<HamiltonianSpec> specs{test_hamiltonian()};
    for (std::size_t n = 1; n <= 3; ++n)
        specs.push_back(random_spec(n, 2 + n, rng));
    for (const auto &spec : specs) {
        const DenseOperator id = DenseOperator::identity(spec.dim());
        for (const auto &term : spec.terms()) {
            involution = std::max(
                involution, max_abs_diff(term.unitary * term.unitary, id));
            unit_norm = std::max(unit_norm,
                                 std::abs(spectral_norm(term.unitary) - 1.0));
            h_bound = std::max(
                h_bound, spectral_norm(Complex(term.alpha) * term.unitary) -
                             spec.h());
        }
        const DenseOperator m = spec.matrix();
        hermitian = std::max(hermitian, max_abs_diff(m, m.adjoint()));
    }
    return {
        at_most("stored unitaries are involutions", involution, tol::kEquality),
        at_most("stored unitaries have unit norm", unit_norm, tol::kEquality),
        at_most("h bounds every weighted term", h_bound, tol::kEquality),
        at_most("assembled Hamiltonian is Hermitian", hermitian, tol::kEquality),
    };
}

std::vector<CheckResult> lcu_suite(const tol::Profile &profile,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> terms(1, 8);
    std::uniform_int_distribution<std::size_t> qubits(1, 4);
    double bound = -1.0, worst_fid = 1.0, prob_gap = 0.0, wv = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = std::size_t{1} << qubits(rng);
        const GeneralizedGate gate = random_gate(terms(rng), dim, rng);
        bound = std::max(bound, spectral_norm(gate.matrix()) - gate.s_bar());
        const Statevector psi = Statevector::random(dim, rng);
        const Vector direct = apply_direct(gate, psi);
        const CircuitOutcome out = run_duality_circuit(gate, psi);
        worst_fid = std::min(worst_fid, fidelity(out.state.amplitudes(), direct));
        prob_gap = std::max(
            prob_gap, std::abs(out.success_prob -
                               direct.squaredNorm() /
                                   (gate.s_bar() * gate.s_bar())));

        const DividerSpec d = default_divider(gate);
        const DenseOperator v = complete_unitary(d.p);
        const DenseOperator w = complete_unitary_row(d.q);
        wv = std::max(wv, std::abs(d.coefficients().sum() - (w * v)(0, 0)));
    }

    // Any convex mixture containing a far-from-identity unitary with weight
    // at least 0.1 stays away from I.
    double extreme = std::numeric_limits<double>::infinity();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 4;
        const std::size_t d = 3;
        std::vector<double> r(d);
        r[0] = 0.1 + 0.9 * unit(rng);
        double rest = 0.0;
        for (std::size_t i = 1; i < d; ++i)
            rest += r[i] = unit(rng);
        for (std::size_t i = 1; i < d; ++i)
            r[i] *= (1.0 - r[0]) / rest;
        Matrix mix = Matrix::Zero(dim, dim);
        const DenseOperator id = DenseOperator::identity(dim);
        for (std::size_t i = 0; i < d; ++i) {
            DenseOperator u = random_unitary(dim, rng);
            while (i == 0 && spectral_norm(u - id) < 0.1)
                u = random_unitary(dim, rng);
            mix += r[i] * u.matrix();
        }
        extreme = std::min(extreme, spectral_norm(mix - id.matrix()));
    }

    // No alternative factorization q∘p = λc beats the default divider.
    double excess = -1.0;
    for (int trial = 0; trial < 10; ++trial) {
        const GeneralizedGate gate = random_gate(4, 4, rng);
        const Statevector psi = Statevector::random(4, rng);
        const double best = run_duality_circuit(gate, psi).success_prob;
        for (int alt = 0; alt < 50; ++alt) {
            Vector p(4), q(4);
            for (Eigen::Index i = 0; i < 4; ++i)
                p[i] = random_gaussian(rng);
            p.normalize();
            for (Eigen::Index i = 0; i < 4; ++i)
                q[i] = gate.coeffs()[static_cast<std::size_t>(i)] / p[i];
            q.normalize();
            const double other =
                run_duality_circuit(gate, psi, make_divider(p, q)).success_prob;
            excess = std::max(excess, other - best);
        }
    }

    return {
        at_most("operator norm bound ||sum c U|| - sum|c|", bound,
                tol::kCoefficientBound),
        at_most("circuit≡direct fidelity (1 - F)", 1.0 - worst_fid,
                profile.fidelity),
        at_most("circuit≡direct success probability", prob_gap, 1e-10),
        at_most("(WV)00 matches sum q p", wv, tol::kEquality),
        at_least("identity is extreme (min ||sum r U - I||)", extreme, 1e-3),
        at_most("default divider maximizes success", excess, tol::kEquality),
    };
}

std::vector<CheckResult> product_suite(const tol::Profile &profile,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> time(-1.0, 1.0);
    double unitary = 0.0, reversal = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const HamiltonianSpec spec = random_spec(2, 3, rng);
        const DenseOperator id = DenseOperator::identity(spec.dim());
        for (int chi = 1; chi <= 3; ++chi) {
            const double t = time(rng);
            const DenseOperator s = suzuki(spec, t, chi);
            unitary = std::max(unitary, max_abs_diff(s.adjoint() * s, id));
            reversal = std::max(reversal,
                                max_abs_diff(suzuki(spec, -t, chi), s.adjoint()));
        }
    }

    double weights = 0.0;
    for (int k = 1; k <= 4; ++k)
        for (const double gamma : {0.6, 0.8, 1.0}) {
            const auto p = multiproduct_params(k, gamma);
            double sum = 0.0;
            for (const double c : p.coeffs)
                sum += c;
            weights = std::max(weights, std::abs(sum - 1.0));
        }

    double worst_fid = 1.0;
    const HamiltonianSpec spec = test_hamiltonian();
    for (int k = 1; k <= 2; ++k) {
        const MultiProductGate m = multiproduct_gate(spec, 0.3, k);
        const Statevector psi = Statevector::random(spec.dim(), rng);
        const CircuitOutcome out = run_duality_circuit(m.gate, psi);
        worst_fid = std::min(
            worst_fid, fidelity(out.state.amplitudes(), apply_direct(m.gate, psi)));
    }

    return {
        at_most("S_chi unitarity (chi <= 3)", unitary, tol::kUnitarity),
        at_most("S_chi time reversal", reversal, tol::kUnitarity),
        at_most("multi-product weights sum to one", weights, tol::kEquality),
        at_most("M_kk circuit≡direct fidelity (1 - F)", 1.0 - worst_fid,
                profile.fidelity),
    };
}

std::vector<CheckResult> slope_suite(const tol::Profile &profile,
                                     std::uint64_t) {
    std::vector<CheckResult> out;
    for (const SlopeReport &s : order_slopes(profile))
        out.push_back(within("slope " + s.label, s.slope, s.target, s.tolerance));
    return out;
}

std::vector<CheckResult> taylor_suite(const tol::Profile &profile,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> time(0.05, 0.4);

    double identity = 0.0;
    for (std::size_t L = 1; L <= 3; ++L)
        for (std::size_t K = 0; K <= 4; ++K) {
            const HamiltonianSpec spec = random_spec(1 + (L + K) % 3, L, rng);
            SegmentPlan plan;
            plan.tau = time(rng);
            plan.K = K;
            plan.g = spec.g();
            const Matrix step = Complex(0.0, -plan.tau) * spec.matrix().matrix();
            Matrix partial = Matrix::Identity(step.rows(), step.cols());
            Matrix power = partial;
            for (std::size_t k = 1; k <= K; ++k) {
                power = (power * step / static_cast<double>(k)).eval();
                partial += power;
            }
            identity = std::max(identity,
                                max_abs_diff(taylor_gate(spec, plan).matrix(),
                                             DenseOperator(partial)));
        }

    const HamiltonianSpec spec = test_hamiltonian();
    const Statevector psi = Statevector::random(spec.dim(), rng);
    double segment_ratio = 0.0, min_success = 1.0, monotone = 0.0;
    double previous_error = std::numeric_limits<double>::infinity();
    std::size_t previous_r = 0, previous_k = 0;
    for (const double eps : {1e-4, 1e-6, 1e-8}) {
        const TaylorRun run = simulate_taylor(spec, 1.0, eps, psi);
        const TaylorDiagnostics &d = run.diagnostics;
        segment_ratio = std::max(segment_ratio,
                                 d.segment_error * static_cast<double>(d.r) / eps);
        for (const double p : d.success_probs)
            min_success = std::min(min_success, p);
        monotone = std::max(monotone, d.total_error - previous_error);
        if (d.r < previous_r || d.K < previous_k)
            monotone = std::max(monotone, 1.0);
        previous_error = d.total_error;
        previous_r = d.r;
        previous_k = d.K;
    }

    // Divider amplitudes a_k · Π b_ℓ reproduce √(β_j / s).
    double amplitude = 0.0;
    for (std::size_t L = 1; L <= 2; ++L)
        for (std::size_t K = 1; K <= 2; ++K) {
            const HamiltonianSpec small = random_spec(1, L, rng);
            SegmentPlan plan = plan_segments(small, 0.5, 1e-3);
            plan.K = K;
            plan.s = 0.0;
            double w = 1.0;
            for (std::size_t k = 0; k <= K; ++k) {
                if (k > 0)
                    w *= plan.g * plan.tau / static_cast<double>(k);
                plan.s += w;
            }
            const TaylorCircuit circuit = build_segment_circuit(small, plan);
            const TaylorGate gate = taylor_gate(small, plan);
            for (std::size_t j = 0; j < gate.betas.size(); ++j) {
                const TaylorIndex &idx = gate.index_set[j];
                Complex a = circuit.unary_amplitudes[idx.order()];
                for (const std::size_t l : idx.terms)
                    a *= circuit.qudit_amplitudes[l];
                amplitude = std::max(
                    amplitude, std::abs(a - std::sqrt(gate.betas[j] / plan.s)));
            }
        }

    // Full-register circuit against Ũψ/s on a small instance.
    double block = 0.0;
    {
        const HamiltonianSpec small = random_spec(2, 2, rng);
        const SegmentPlan plan = plan_segments(small, 0.3, 1e-3);
        const TaylorCircuit circuit = build_segment_circuit(small, plan);
        const Statevector phi = Statevector::random(small.dim(), rng);
        Statevector state = circuit.circuit.embed(phi);
        circuit.circuit.apply(state);
        const TaylorGate gate = taylor_gate(small, plan);
        const Vector expected =
            gate.matrix().apply(phi.amplitudes()) / gate.s();
        block = (circuit.circuit.postselect(state) - expected).norm();
    }

    const double ratio = static_cast<double>(segment_gate_count(2, 8, 3)) /
                         static_cast<double>(segment_gate_count(2, 4, 3));

    // s = 2 and Ũ unitary: β = (1, 1), V = (U, e^{2πi/3}U).
    double oaa = 0.0;
    {
        const DenseOperator u = random_unitary(4, rng);
        const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        const GeneralizedGate gate =
            make_duality_gate({0.5, 0.5}, {u, omega * u});
        const Statevector phi = Statevector::random(4, rng);
        oaa = std::abs(
            oaa_round(build_duality_circuit(gate), phi).success_prob - 1.0);
    }

    return {
        at_most("Taylor algebraic identity", identity, tol::kEquality),
        at_most("segment error * r / eps", segment_ratio, 1.0),
        at_least("amplified success probability", min_success, 0.99),
        at_most("total error monotone in eps", monotone, 0.0),
        at_most("divider amplitudes reproduce sqrt(beta/s)", amplitude,
                tol::kEquality),
        at_most("segment circuit block equals Ũ/s", block, profile.equality),
        within("gate-count ratio L=8 vs L=4", ratio, 2.2, 0.4),
        at_most("OAA success for s = 2 (|p - 1|)", oaa, 1e-10),
    };
}

using Suite = std::function<std::vector<CheckResult>(const tol::Profile &,
                                                     std::uint64_t)>;

const std::map<std::string, Suite, std::less<>> &suites() {
    static const std::map<std::string, Suite, std::less<>> table{
        {"numerics", numerics_suite}, {"pauli", pauli_suite},
        {"lcu", lcu_suite},           {"product", product_suite},
        {"slopes", slope_suite},      {"taylor", taylor_suite},
    };
    return table;
}

} // namespace

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"numerics", "pauli", "lcu",
                                                "product",  "slopes", "taylor"};
    return names;
}

std::vector<CheckResult> run_suite(std::string_view suite,
                                   const tol::Profile &profile,
                                   std::uint64_t seed) {
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto &name : suite_names()) {
            auto part = suites().at(name)(profile, seed);
            for (auto &r : part)
                r.name = name + ": " + r.name;
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    const auto it = suites().find(suite);
    if (it == suites().end())
        throw UsageError("unknown verify suite '" + std::string(suite) +
                         "' (expected all, numerics, pauli, lcu, product, "
                         "slopes or taylor)");
    return it->second(profile, seed);
}

bool print_results(std::ostream &out, const std::vector<CheckResult> &results) {
    bool ok = true;
    for (const auto &r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << ": measured "
            << fmt(r.measured) << ", expected " << r.expected << '\n';
        ok = ok && r.pass;
    }
    return ok;
}

std::vector<SlopeReport> order_slopes(const tol::Profile &profile) {
    const HamiltonianSpec spec = test_hamiltonian();
    const DenseOperator h = spec.matrix();
    const std::vector<double> low{0.05, 0.1, 0.2, 0.4};
    const std::vector<double> high{0.2, 0.4, 0.8};

    auto slope = [&](const std::vector<double> &ts,
                     const std::function<DenseOperator(double)> &approx) {
        std::vector<double> errs;
        for (const double t : ts)
            errs.push_back(spectral_norm(approx(t) - expm_hermitian(h, t)));
        return fit_loglog_slope(ts, errs);
    };

    return {
        {"S_1", slope(low, [&](double t) { return suzuki(spec, t, 1); }), 3.0,
         profile.slope},
        {"S_2", slope(low, [&](double t) { return suzuki(spec, t, 2); }), 5.0,
         profile.slope},
        {"M_{1,1}",
         slope(low, [&](double t) { return multiproduct_gate(spec, t, 1).matrix(); }),
         5.0, profile.slope},
        {"M_{2,2}",
         slope(high,
               [&](double t) { return multiproduct_gate(spec, t, 2).matrix(); }),
         9.0, profile.slope_high_order},
    };
}

} // namespace duality
