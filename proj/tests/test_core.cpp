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

#include "ditkit/core.hpp"
#include "ditkit/gates.hpp"
#include "support.hpp"

using namespace ditkit;
using std::numbers::pi;

namespace {

const std::vector<std::size_t> kQutritQubit{3, 2};

Matrix shift3() {
    Matrix x(3, 3);
    x(0, 2) = 1.0;
    x(1, 0) = 1.0;
    x(2, 1) = 1.0;
    return x;
}

GateSpec simple_gate(const char* name, std::size_t line) {
    GateSpec g;
    g.name = name;
    g.lines = {line};
    return g;
}

} // namespace

TEST_CASE("radix_index maps digit strings to basis positions") {
    CHECK(radix_index(std::vector<std::size_t>{2, 0}, kQutritQubit) == 4);
    CHECK(radix_index(std::vector<std::size_t>{0, 0, 0}, std::vector<std::size_t>{2, 5, 7}) == 0);
    // digits (1,2,3,6) over dims (2,3,4,7): 1*84 + 2*28 + 3*7 + 6 = 167 = D-1.
    CHECK(radix_index(std::vector<std::size_t>{1, 2, 3, 6},
                      std::vector<std::size_t>{2, 3, 4, 7}) == 167);
    CHECK_THROWS_WITH_AS(
        radix_index(std::vector<std::size_t>{3, 0}, kQutritQubit),
        doctest::Contains("qudit 0"), std::domain_error);
}

TEST_CASE("radix_index and index_to_digits invert each other") {
    auto gen = testing::rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> dims(1 + gen() % 4);
        for (auto& d : dims) {
            d = 2 + gen() % 5;
        }
        const std::size_t total = *checked_total_dimension(dims);
        for (std::size_t i = 0; i < total; ++i) {
            CHECK(radix_index(index_to_digits(i, dims), dims) == i);
        }
    }
}

TEST_CASE("shift and clock gates realize the printed qutrit matrices") {
    const std::size_t d3[1] = {3};
    const Matrix x = gate_matrix(simple_gate("x", 0), d3);
    CHECK(max_abs_diff(x, shift3()) == 0.0);

    Matrix z_expected(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        z_expected(j, j) = std::polar(1.0, 2.0 * pi * static_cast<double>(j) / 3.0);
    }
    CHECK(max_abs_diff(gate_matrix(simple_gate("z", 0), d3), z_expected) <= 1e-15);
}

TEST_CASE("shift^d and clock^d are the identity for d = 2..8") {
    for (std::size_t d = 2; d <= 8; ++d) {
        const std::size_t dims[1] = {d};
        for (const char* name : {"x", "z"}) {
            const Matrix u = gate_matrix(simple_gate(name, 0), dims);
            Matrix power = Matrix::identity(d);
            for (std::size_t k = 0; k < d; ++k) {
                power = u * power;
            }
            CHECK(max_abs_diff(power, Matrix::identity(d)) <= 1e-12);
        }
    }
}

TEST_CASE("fourier gate at d=2 and phase gate at d=2 take their qubit forms") {
    const std::size_t d2[1] = {2};
    Matrix h_expected(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    h_expected(0, 0) = inv_sqrt2;
    h_expected(0, 1) = inv_sqrt2;
    h_expected(1, 0) = inv_sqrt2;
    h_expected(1, 1) = -inv_sqrt2;
    CHECK(max_abs_diff(gate_matrix(simple_gate("h", 0), d2), h_expected) <= 1e-15);

    Matrix s_expected(2, 2);
    s_expected(0, 0) = 1.0;
    s_expected(1, 1) = Complex(0.0, 1.0);
    CHECK(max_abs_diff(gate_matrix(simple_gate("s", 0), d2), s_expected) <= 1e-15);
}

TEST_CASE("csum adds the control digit into the target modulo its dimension") {
    GateSpec csum;
    csum.name = "csum";
    csum.lines = {0, 1};
    const std::size_t dims[2] = {3, 2};
    const Matrix m = gate_matrix(csum, dims);
    // |1,0> -> |1,1> and |2,0> -> |2,0>.
    CHECK(m(3, 2) == Complex(1.0));
    CHECK(m(4, 4) == Complex(1.0));
    CHECK(m(2, 2) == Complex(0.0));
    // column of |0,1> stays put.
    CHECK(m(1, 1) == Complex(1.0));
}

TEST_CASE("every gate matrix is unitary for dimensions up to 8") {
    auto gen = testing::rng(7);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (std::size_t d = 2; d <= 8; ++d) {
        const std::size_t one[1] = {d};
        for (const char* name : {"x", "z", "s", "h"}) {
            CHECK(gate_matrix(simple_gate(name, 0), one).unitarity_defect() <= 1e-12);
        }
        GateSpec rxy = simple_gate("rxy", 0);
        rxy.params = {0.0, static_cast<double>(d - 1), angle(gen), angle(gen)};
        CHECK(gate_matrix(rxy, one).unitarity_defect() <= 1e-12);
        GateSpec rz = simple_gate("rz", 0);
        rz.params = {0.0, static_cast<double>(d - 1), angle(gen)};
        CHECK(gate_matrix(rz, one).unitarity_defect() <= 1e-12);
        GateSpec crot = simple_gate("crot", 0);
        crot.params = {0.0, static_cast<double>(d - 1), angle(gen), angle(gen),
                       angle(gen), angle(gen)};
        CHECK(gate_matrix(crot, one).unitarity_defect() <= 1e-12);
    }
    for (std::size_t d1 = 2; d1 <= 8; ++d1) {
        for (std::size_t d2 = 2; d2 <= 8; ++d2) {
            const std::size_t two[2] = {d1, d2};
            GateSpec csum;
            csum.name = "csum";
            csum.lines = {0, 1};
            CHECK(gate_matrix(csum, two).unitarity_defect() <= 1e-12);
            GateSpec ms;
            ms.name = "ms";
            ms.lines = {0, 1};
            ms.params = {angle(gen)};
            CHECK(gate_matrix(ms, two).unitarity_defect() <= 1e-12);
            GateSpec ls;
            ls.name = "ls";
            ls.lines = {0, 1};
            ls.params = {angle(gen)};
            CHECK(gate_matrix(ls, two).unitarity_defect() <= 1e-12);
            GateSpec pswap;
            pswap.name = "pswap";
            pswap.lines = {0, 1};
            pswap.params = {0.0, 1.0, 1.0, 0.0, angle(gen), angle(gen), angle(gen),
                            angle(gen)};
            CHECK(gate_matrix(pswap, two).unitarity_defect() <= 1e-12);
        }
    }
}

TEST_CASE("ms and ls reduce to the coupled qubit generators at d=2") {
    const std::size_t two[2] = {2, 2};
    const double theta = 0.7354;

    GateSpec ms;
    ms.name = "ms";
    ms.lines = {0, 1};
    ms.params = {theta};
    // Independent route: exponentiate -i theta/4 (X(x)I + I(x)X)^2 directly.
    Matrix x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const Matrix eye = Matrix::identity(2);
    const Matrix gen_sum = [&] {
        Matrix g = kron(x, eye);
        const Matrix g2 = kron(eye, x);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                g(i, j) += g2(i, j);
            }
        }
        return g;
    }();
    Matrix exponent = gen_sum * gen_sum;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            exponent(i, j) *= Complex(0.0, -theta / 4.0);
        }
    }
    CHECK(max_abs_diff(gate_matrix(ms, two), testing::expm(exponent)) <= 1e-12);

    GateSpec ls;
    ls.name = "ls";
    ls.lines = {0, 1};
    ls.params = {theta};
    Matrix ls_expected(4, 4);
    ls_expected(0, 0) = std::polar(1.0, -theta / 4.0);
    ls_expected(1, 1) = std::polar(1.0, theta / 4.0);
    ls_expected(2, 2) = std::polar(1.0, theta / 4.0);
    ls_expected(3, 3) = std::polar(1.0, -theta / 4.0);
    CHECK(max_abs_diff(gate_matrix(ls, two), ls_expected) <= 1e-12);
}

TEST_CASE("controlled_matrix at qubit dimensions gives the standard CNOT") {
    const std::size_t d2[1] = {2};
    const Matrix base = gate_matrix(simple_gate("x", 0), d2);
    const std::size_t cdims[1] = {2};
    const std::size_t clevels[1] = {1};
    const Matrix cnot = controlled_matrix(base, cdims, clevels);
    Matrix expected(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 1) = 1.0;
    expected(2, 3) = 1.0;
    expected(3, 2) = 1.0;
    CHECK(max_abs_diff(cnot, expected) == 0.0);
}

TEST_CASE("controlled_matrix with two controls acts only on the selected block") {
    const std::size_t d4[1] = {4};
    const Matrix base = gate_matrix(simple_gate("h", 0), d4);
    const std::size_t cdims[2] = {2, 3};
    const std::size_t clevels[2] = {0, 0};
    const Matrix m = controlled_matrix(base, cdims, clevels);
    REQUIRE(m.rows() == 24);
    CHECK(m.is_unitary(1e-12));
    for (std::size_t i = 0; i < 24; ++i) {
        for (std::size_t j = 0; j < 24; ++j) {
            if (i < 4 && j < 4) {
                CHECK(std::abs(m(i, j) - base(i, j)) <= 1e-15);
            } else {
                const Complex expected = (i == j) ? Complex(1.0) : Complex(0.0);
                CHECK(m(i, j) == expected);
            }
        }
    }
}

TEST_CASE("controlled shift on a qutrit control fixes non-matching blocks") {
    const std::size_t d3[1] = {3};
    const Matrix base = gate_matrix(simple_gate("x", 0), d3);
    const std::size_t cdims[1] = {3};
    const std::size_t clevels[1] = {2};
    const Matrix m = controlled_matrix(base, cdims, clevels);
    const std::vector<std::size_t> dims{3, 3};
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t t = 0; t < 3; ++t) {
            const std::size_t col = radix_index(std::vector<std::size_t>{c, t}, dims);
            const std::size_t expected_row = radix_index(
                std::vector<std::size_t>{c, c == 2 ? (t + 1) % 3 : t}, dims);
            for (std::size_t row = 0; row < 9; ++row) {
                CHECK(m(row, col) == (row == expected_row ? Complex(1.0) : Complex(0.0)));
            }
        }
    }
}

TEST_CASE("circuit_unitary composes instruction matrices in program order") {
    Circuit empty;
    empty.add_quantum_register({"q", {2, 3}});
    CHECK(max_abs_diff(circuit_unitary(empty), Matrix::identity(6)) == 0.0);

    Circuit lone;
    lone.add_quantum_register({"q", {3}});
    lone.add_gate(simple_gate("x", 0));
    CHECK(max_abs_diff(circuit_unitary(lone), shift3()) == 0.0);

    Circuit inverse_pair;
    inverse_pair.add_quantum_register({"q", {3}});
    inverse_pair.add_gate(simple_gate("h", 0));
    const std::size_t d3[1] = {3};
    GateSpec dagger;
    dagger.name = "cu";
    dagger.lines = {0};
    dagger.custom_matrix = gate_matrix(simple_gate("h", 0), d3).adjoint();
    inverse_pair.add_gate(dagger);
    CHECK(max_abs_diff(circuit_unitary(inverse_pair), Matrix::identity(3)) <= 1e-12);
}

TEST_CASE("circuit_unitary of concatenated circuits is the ordered product") {
    auto gen = testing::rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<std::size_t> dims{2, 3, 2};
        const Circuit a = testing::random_circuit(dims, 4, gen);
        const Circuit b = testing::random_circuit(dims, 4, gen);
        Circuit both;
        both.add_quantum_register({"q", dims});
        for (const auto& ins : a.instructions()) {
            both.add_gate(ins.gate());
        }
        for (const auto& ins : b.instructions()) {
            both.add_gate(ins.gate());
        }
        const Matrix product = circuit_unitary(b) * circuit_unitary(a);
        CHECK(max_abs_diff(circuit_unitary(both), product) <= 1e-10);
    }
}

TEST_CASE("circuit_unitary rejects measurements and oversized circuits") {
    Circuit measured;
    measured.add_quantum_register({"q", {2}});
    measured.add_classic_register({"c", 1});
    measured.add_measurement(0, 0);
    CHECK_THROWS_AS(circuit_unitary(measured), std::invalid_argument);

    Circuit big;
    big.add_quantum_register({"q", std::vector<std::size_t>(13, 2)});
    CHECK_THROWS_AS(circuit_unitary(big, 4096), std::domain_error);
}

TEST_CASE("circuit_stats summarizes the mixed-register showcase program") {
    Circuit circuit;
    circuit.add_quantum_register({"reg_1", {2, 3}});
    circuit.add_quantum_register({"reg_2", {4, 7}});
    circuit.add_classic_register({"meas", 4});

    GateSpec h = simple_gate("h", 2);
    h.control = ControlSpec{{{0, 0}, {1, 0}}};
    circuit.add_gate(h);
    GateSpec csum;
    csum.name = "csum";
    csum.lines = {2, 0};
    circuit.add_gate(csum);
    GateSpec r1 = simple_gate("rxy", 1);
    r1.params = {0, 2, pi, pi / 2};
    circuit.add_gate(r1);
    GateSpec r2 = simple_gate("rxy", 3);
    r2.params = {0, 1, pi, pi / 2};
    circuit.add_gate(r2);
    for (std::size_t i = 0; i < 4; ++i) {
        circuit.add_measurement(i, i);
    }

    const CircuitStats stats = circuit_stats(circuit);
    CHECK(stats.gates == 4);
    CHECK(stats.measurements == 4);
    CHECK(stats.entangling_gates == 2);
    CHECK(stats.gate_counts.at("h") == 1);
    CHECK(stats.gate_counts.at("csum") == 1);
    CHECK(stats.gate_counts.at("rxy") == 2);
    CHECK(stats.qudits == 4);
    CHECK(stats.total_dimension == 168);
    CHECK(stats.depth == 3);
}

TEST_CASE("circuit_stats of an empty circuit is all zeros") {
    Circuit circuit;
    circuit.add_quantum_register({"q", {2}});
    const CircuitStats stats = circuit_stats(circuit);
    CHECK(stats.gates == 0);
    CHECK(stats.entangling_gates == 0);
    CHECK(stats.measurements == 0);
    CHECK(stats.depth == 0);
}

TEST_CASE("three sequential gates on one line give depth three") {
    Circuit circuit;
    circuit.add_quantum_register({"q", {3, 3}});
    circuit.add_gate(simple_gate("x", 0));
    circuit.add_gate(simple_gate("h", 0));
    circuit.add_gate(simple_gate("z", 0));
    CHECK(circuit_stats(circuit).depth == 3);
}

TEST_CASE("gate validation rejects malformed specs") {
    Circuit circuit;
    circuit.add_quantum_register({"q", {3, 3}});

    GateSpec unknown = simple_gate("foo", 0);
    CHECK_THROWS_AS(circuit.add_gate(unknown), std::invalid_argument);

    GateSpec bad_levels = simple_gate("rxy", 0);
    bad_levels.params = {0, 3, 1.0, 0.0}; // level 3 >= dim 3
    CHECK_THROWS_AS(circuit.add_gate(bad_levels), std::invalid_argument);

    GateSpec overlap = simple_gate("h", 0);
    overlap.control = ControlSpec{{{0, 1}}};
    CHECK_THROWS_AS(circuit.add_gate(overlap), std::invalid_argument);

    GateSpec non_unitary;
    non_unitary.name = "cu";
    non_unitary.lines = {0};
    Matrix m(3, 3);
    m(0, 0) = 2.0;
    non_unitary.custom_matrix = m;
    CHECK_THROWS_AS(circuit.add_gate(non_unitary), std::invalid_argument);

    circuit.add_classic_register({"c", 2});
    circuit.add_measurement(0, 0);
    CHECK_THROWS_AS(circuit.add_gate(simple_gate("x", 0)), std::invalid_argument);
    circuit.add_gate(simple_gate("x", 1)); // untouched line is still usable
}
