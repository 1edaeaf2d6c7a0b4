// Copyright 2026 The ditkit Authors
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

#include "ditkit/gates.hpp"
#include "ditkit/statevector.hpp"
#include "support.hpp"

using namespace ditkit;
using std::numbers::pi;

namespace {

GateSpec simple_gate(const char* name, std::size_t line) {
    GateSpec g;
    g.name = name;
    g.lines = {line};
    return g;
}

/// Fourier on the qutrit followed by csum(qutrit -> qubit): the standard
/// construction of the qutrit-qubit entangled pair.
Circuit entangled_pair_circuit() {
    Circuit circuit;
    circuit.add_quantum_register({"q", {3, 2}});
    circuit.add_gate(simple_gate("h", 0));
    GateSpec csum;
    csum.name = "csum";
    csum.lines = {0, 1};
    circuit.add_gate(csum);
    return circuit;
}

} // namespace

TEST_CASE("the fourier gate creates the equal qutrit superposition") {
    sim::StateVector state = sim::zero_state({3});
    sim::apply_gate(state, simple_gate("h", 0));
    const double amp = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(state.amps[i] - amp) <= 1e-15);
    }
}

TEST_CASE("the shift gate advances the basis state") {
    sim::StateVector state = sim::zero_state({3});
    sim::apply_gate(state, simple_gate("x", 0));
    CHECK(std::abs(state.amps[1] - 1.0) <= 1e-15);
    CHECK(std::abs(state.amps[0]) == 0.0);
}

TEST_CASE("an identity custom gate leaves any state unchanged") {
    auto gen = testing::rng(5);
    sim::StateVector state = testing::random_state({3, 2}, gen);
    const sim::StateVector before = state;
    GateSpec cu;
    cu.name = "cu";
    cu.lines = {0};
    cu.custom_matrix = Matrix::identity(3);
    sim::apply_gate(state, cu);
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        CHECK(state.amps[i] == before.amps[i]);
    }
}

TEST_CASE("simulate reproduces the qutrit-qubit entangled pair") {
    const sim::StateVector state = sim::simulate(entangled_pair_circuit());
    const double amp = 1.0 / std::sqrt(3.0);
    const std::vector<double> expected{amp, 0, 0, amp, amp, 0};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(state.amps[i] - expected[i]) <= 1e-12);
    }
}

TEST_CASE("an empty circuit yields the zero basis state") {
    Circuit circuit;
    circuit.add_quantum_register({"q", {2, 3}});
    const sim::StateVector state = sim::simulate(circuit);
    CHECK(state.amps[0] == Complex(1.0));
    CHECK(state.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("two subspace rotations match the matrix oracle") {
    Circuit circuit;
    circuit.add_quantum_register({"q", {3, 7}});
    GateSpec r1 = simple_gate("rxy", 0);
    r1.params = {0, 2, pi, pi / 2};
    circuit.add_gate(r1);
    GateSpec r2 = simple_gate("rxy", 1);
    r2.params = {0, 1, pi, pi / 2};
    circuit.add_gate(r2);

    const sim::StateVector state = sim::simulate(circuit);
    CHECK(std::abs(state.norm_squared() - 1.0) <= 1e-12);

    const Matrix u = circuit_unitary(circuit);
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        CHECK(std::abs(state.amps[i] - u(i, 0)) <= 1e-12);
    }
}

TEST_CASE("apply_gate agrees with the embedded matrix on random circuits") {
    auto gen = testing::rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> dims(3);
        for (auto& d : dims) {
            d = 2 + gen() % 3;
        }
        const Circuit circuit = testing::random_circuit(dims, 6, gen);
        sim::StateVector state = testing::random_state(dims, gen);
        std::vector<Complex> reference = state.amps;
        for (const auto& instruction : circuit.instructions()) {
            sim::apply_gate(state, instruction.gate());
            const Matrix embedded =
                embedded_gate_matrix(instruction.gate(), dims);
            std::vector<Complex> next(reference.size(), Complex(0.0));
            for (std::size_t r = 0; r < embedded.rows(); ++r) {
                for (std::size_t c = 0; c < embedded.cols(); ++c) {
                    next[r] += embedded(r, c) * reference[c];
                }
            }
            reference = std::move(next);
        }
        for (std::size_t i = 0; i < reference.size(); ++i) {
            CHECK(std::abs(state.amps[i] - reference[i]) <= 1e-10);
        }
    }
}

TEST_CASE("norm is preserved over a thousand random gates") {
    auto gen = testing::rng(47);
    const std::vector<std::size_t> dims{3, 2, 4};
    const Circuit circuit = testing::random_circuit(dims, 1000, gen);
    sim::StateVector state = sim::zero_state(dims);
    for (const auto& instruction : circuit.instructions()) {
        sim::apply_gate(state, instruction.gate());
    }
    CHECK(std::abs(state.norm_squared() - 1.0) <= 1e-10);
}

TEST_CASE("a controlled gate fixes every basis state whose controls differ") {
    auto gen = testing::rng(53);
    const std::vector<std::size_t> dims{4, 4, 3};
    for (int trial = 0; trial < 5; ++trial) {
        GateSpec gate = simple_gate("h", 1);
        const std::size_t control_level = gen() % 4;
        gate.control = ControlSpec{{{0, control_level}}};
        const std::size_t total = *checked_total_dimension(dims);
        for (std::size_t basis = 0; basis < total; ++basis) {
            const auto digits = index_to_digits(basis, dims);
            if (digits[0] == control_level) {
                continue;
            }
            sim::StateVector state = sim::zero_state(dims);
            state.amps[0] = 0.0;
            state.amps[basis] = 1.0;
            sim::apply_gate(state, gate);
            CHECK(std::abs(state.amps[basis] - 1.0) <= 1e-15);
        }
    }
}

TEST_CASE("sampling the zero state is deterministic") {
    const sim::StateVector state = sim::zero_state({2, 3});
    const sim::Counts counts = sim::sample(state, 100, 7);
    REQUIRE(counts.counts.size() == 1);
    CHECK(counts.counts.at("0,0") == 100);
}

TEST_CASE("sampling the equal superposition stays within binomial bounds") {
    sim::StateVector state = sim::zero_state({3});
    sim::apply_gate(state, simple_gate("h", 0));
    const sim::Counts counts = sim::sample(state, 9000, 12345);
    // sigma = sqrt(9000 * (1/3)(2/3)) ~ 44.7; allow 3 sigma around 3000.
    for (const char* key : {"0", "1", "2"}) {
        const double n = static_cast<double>(counts.counts.at(key));
        CHECK(std::abs(n - 3000.0) <= 3.0 * 44.72);
    }
}

TEST_CASE("the entangled pair only produces correlated outcomes") {
    const sim::StateVector state = sim::simulate(entangled_pair_circuit());
    const sim::Counts counts = sim::sample(state, 6000, 99);
    std::uint64_t total = 0;
    for (const auto& [key, n] : counts.counts) {
        const bool allowed = key == "0,0" || key == "1,1" || key == "2,0";
        CHECK(allowed);
        total += n;
    }
    CHECK(total == 6000);
}

TEST_CASE("equal seeds reproduce counts and distinct seeds diverge") {
    sim::StateVector state = sim::zero_state({3});
    sim::apply_gate(state, simple_gate("h", 0));
    const sim::Counts a = sim::sample(state, 1
000, 4);
    const sim::Counts b = sim::sample(state, 1000, 4);
    const sim::Counts c = sim::sample(state, 1000, 5);
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
}

TEST_CASE("sample rejects unnormalized states instead of renormalizing") {
    sim::StateVector state = sim::zero_state({2});
    state.amps[0] = 0.5;
    CHECK_THROWS_AS(sim::sample(state, 10, 0), std::invalid_argument);
}

TEST_CASE("fidelity is phase-insensitive and separates orthogonal states") {
    auto gen = testing::rng(61);
    const sim::StateVector psi = testing::random_state({3, 2}, gen);
    CHECK(sim::fidelity(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));

    sim::StateVector e0 = sim::zero_state({2});
    sim::StateVector e1 = sim::zero_state({2});
    e1.amps = {0.0, 1.0};
    CHECK(sim::fidelity(e0, e1) == 0.0);

    sim::StateVector rotated = psi;
    for (Complex& a : rotated.amps) {
        a *= std::polar(1.0, pi / 7.0);
    }
    CHECK(std::abs(sim::fidelity(psi, rotated) - 1.0) <= 1e-12);
}

TEST_CASE("the state dump lists only non-negligible amplitudes") {
    const sim::StateVector state = sim::simulate(entangled_pair_circuit());
    const std::string dump = sim::dump_state(state);
    CHECK(dump.find("0,0\t") != std::string::npos);
    CHECK(dump.find("1,1\t") != std::string::npos);
    CHECK(dump.find("2,0\t") != std::string::npos);
    CHECK(dump.find("0,1\t") == std::string::npos);
    // three lines
    CHECK(std::count(dump.begin(), dump.end(), '\n') == 3);
}

TEST_CASE("the dense backend refuses dimension products beyond its cap") {
    CHECK_THROWS_AS(sim::zero_state(std::vector<std::size_t>(100, 3)),
                    std::domain_error);
}
