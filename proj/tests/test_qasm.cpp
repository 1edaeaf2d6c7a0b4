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
#include <random>

#include "ditkit/qasm.hpp"
#include "support.hpp"

using namespace ditkit;
using std::numbers::pi;

namespace {

// Two mixed-dimensional registers, a controlled Fourier gate, a controlled
// sum and two subspace rotations; the canonical showcase program.
constexpr const char* kShowcaseProgram = R"(DITQASM 2.0;
qreg reg_1 [2][2, 3];
qreg reg_2 [2][4, 7];
creg meas[4];
h reg_2[0] ctl reg_1[0] reg_1[1] [0,0];
csum reg_2[0], reg_1[0];
rxy (0, 2, pi, pi/2) reg_1[1];
rxy (0, 1, pi, pi/2) reg_2[1];
measure reg_1[0] -> meas[0];
measure reg_1[1] -> meas[1];
measure reg_2[0] -> meas[2];
measure reg_2[1] -> meas[3];
)";

bool structurally_equal(const Circuit& a, const Circuit& b) {
    if (a.quantum_registers().size() != b.quantum_registers().size() ||
        a.classic_registers().size() != b.classic_registers().size() ||
        a.instructions().size() != b.instructions().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.quantum_registers().size(); ++i) {
        if (a.quantum_registers()[i].name != b.quantum_registers()[i].name ||
            a.quantum_registers()[i].dims != b.quantum_registers()[i].dims) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.instructions().size(); ++i) {
        const auto& x = a.instructions()[i];
        const auto& y = b.instructions()[i];
        if (x.is_gate() != y.is_gate()) {
            return false;
        }
        if (!x.is_gate()) {
            if (x.measurement().line != y.measurement().line ||
                x.measurement().cell != y.measurement().cell) {
                return false;
            }
            continue;
        }
        const GateSpec& g = x.gate();
        const GateSpec& h = y.gate();
        if (g.name != h.name || g.lines != h.lines ||
            g.params.size() != h.params.size() ||
            g.control.has_value() != h.control.has_value()) {
            return false;
        }
        for (std::size_t p = 0; p < g.params.size(); ++p) {
            if (std::abs(g.params[p] - h.params[p]) > 1e-15) {
                return false;
            }
        }
        if (g.control && g.control->controls != h.control->controls) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("the showcase program parses into the declared structure") {
    const auto result = qasm::parse(kShowcaseProgram);
    REQUIRE(result.ok());
    const Circuit& c = *result.circuit;

    REQUIRE(c.quantum_registers().size() == 2);
    CHECK(c.quantum_registers()[0].name == "reg_1");
    CHECK(c.quantum_registers()[0].dims == std::vector<std::size_t>{2, 3});
    CHECK(c.quantum_registers()[1].dims == std::vector<std::size_t>{4, 7});
    REQUIRE(c.classic_registers().size() == 1);
    CHECK(c.classic_registers()[0].size == 4);
    CHECK(c.total_dimension() == 168);

    REQUIRE(c.instructions().size() == 8);
    const GateSpec& h = c.instructions()[0].gate();
    CHECK(h.name == "h");
    CHECK(h.lines == std::vector<std::size_t>{2});
    REQUIRE(h.control.has_value());
    const std::vector<std::pair<std::size_t, std::size_t>> expected_ctl{{0, 0},
                                                                        {1, 0}};
    CHECK(h.control->controls == expected_ctl);

    const GateSpec& csum = c.instructions()[1].gate();
    CHECK(csum.name == "csum");
    CHECK(csum.lines == std::vector<std::size_t>{2, 0}); // first operand controls

    const GateSpec& r1 = c.instructions()[2].gate();
    CHECK(r1.name == "rxy");
    CHECK(r1.lines == std::vector<std::size_t>{1});
    CHECK(r1.params[0] == 0.0);
    CHECK(r1.params[1] == 2.0);
    CHECK(r1.params[2] == doctest::Approx(pi).epsilon(1e-15));
    CHECK(r1.params[3] == doctest::Approx(pi / 2).epsilon(1e-15));

    const GateSpec& r2 = c.instructions()[3].gate();
    CHECK(r2.lines == std::vector<std::size_t>{3});

    for (std::size_t i = 0; i < 4; ++i) {
        const auto& m = c.instructions()[4 + i].measurement();
        CHECK(m.line == i);
        CHECK(m.cell == i);
    }
}

TEST_CASE("a minimal program parses") {
    const auto result = qasm::parse("DITQASM 2.0; qreg q [1][3]; x q[0];");
    REQUIRE(result.ok());
    CHECK(result.circuit->dims() == std::vector<std::size_t>{3});
    REQUIRE(result.circuit->instructions().size() == 1);
    CHECK(result.circuit->instructions()[0].gate().name == "x");
}

TEST_CASE("subspace level bounds are reported with a source span") {
    const auto result =
        qasm::parse("DITQASM 2.0; qreg q [1][3]; rxy (0, 3, pi, 0) q[0];");
    REQUIRE_FALSE(result.ok());
    REQUIRE_FALSE(result.diagnostics.empty());
    const auto& d = result.diagnostics.front();
    CHECK(d.message.find("3 >= dimension 3") != std::string::npos);
    CHECK(d.span.line == 1);
    CHECK(d.span.byte_end <= std::string("DITQASM 2.0; qreg q [1][3]; rxy (0, 3, pi, 0) q[0];").size());
}

TEST_CASE("parse_expr evaluates parameter arithmetic") {
    CHECK(qasm::parse_expr("pi/2") == 1.5707963267948966);
    CHECK(qasm::parse_expr("-pi") == -pi);
    CHECK(qasm::parse_expr("3*pi/4 + 0.5") ==
          doctest::Approx(2.856194490192345).epsilon(1e-15));
    CHECK(qasm::parse_expr("2*(1 + 3)") == 8.0);
    CHECK_THROWS_AS(qasm::parse_expr("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(qasm::parse_expr("pi pi"), std::invalid_argument);
}

TEST_CASE("emit produces canonical text that reparses identically") {
    const auto first = qasm::parse(kShowcaseProgram);
    REQUIRE(first.ok());
    const std::string printed = qasm::emit(*first.circuit);
    const auto second = qasm::parse(printed);
    REQUIRE(second.ok());
    CHECK(structurally_equal(*first.circuit, *second.circuit));
    // Canonical printing is a fixed point.
    CHECK(qasm::emit(*second.circuit) == printed);
}

TEST_CASE("emit prints angles with enough digits to roundtrip exactly") {
    Circuit c;
    c.add_quantum_register({"q", {2}});
    GateSpec gate;
    gate.name = "rxy";
    gate.lines = {0};
    gate.params = {0.0, 1.0, pi, pi / 2.0};
    c.add_gate(gate);
    const std::string text = qasm::emit(c);
    CHECK(text.find("rxy (0, 1, 3.1415926535897931, 1.5707963267948966) q[0];") !=
          std::string::npos);
}

TEST_CASE("emit of an empty circuit is the header plus declarations") {
    Circuit c;
    c.add_quantum_register({"q", {2, 3}});
    CHECK(qasm::emit(c) == "DITQASM 2.0;\nqreg q [2][2, 3];\n");
}

TEST_CASE("random circuits survive an emit/parse roundtrip") {
    auto gen = testing::rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::size_t> dims(2 + gen() % 3);
        for (auto& d : dims) {
            d = 2 + gen() % 4;
        }
        const Circuit circuit = testing::random_circuit(dims, 12, gen);
        const auto reparsed = qasm::parse(qasm::emit(circuit));
        REQUIRE(reparsed.ok());
        CHECK(structurally_equal(circuit, *reparsed.circuit));
    }
}

TEST_CASE("version handling accepts exactly 2.0") {
    CHECK_FALSE(qasm::parse("DITQASM 3.0; qreg q [1][2];").ok());
    CHECK_FALSE(qasm::parse("DITQASM 2.00; qreg q [1][2];").ok());
    CHECK(qasm::parse("DITQASM 2.0; qreg q [1][2];").ok());
}

TEST_CASE("an empty file reports a missing header") {
    const auto result = qasm::parse("");
    REQUIRE_FALSE(result.ok());
    CHECK(result.diagnostics.front().message.find("missing DITQASM header") !=
          std::string::npos);
}

TEST_CASE("semantic errors carry in-bounds spans and do not stop reporting") {
    const std::string text = "DITQASM 2.0;\n"
                             "qreg q [1][3];\n"
                             "qreg q [1][2];\n"  // redeclared
                             "y q[0];\n"         // unknown gate
                             "x q[7];\n";        // index out of range
    const auto result = qasm::parse(text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.diagnostics.size() >= 3);
    std::size_t last_begin = 0;
    for (const auto& d : result.diagnostics) {
        CHECK(d.span.byte_begin >= last_begin); // ordered by position
        CHECK(d.span.byte_end <= text.size());
        CHECK(d.span.line >= 1);
        last_begin = d.span.byte_begin;
    }
}

TEST_CASE("arbitrary byte strings never crash the parser") {
    std::mt19937_64 gen(2026);
    for (int trial = 0; trial < 300; ++trial) {
        std::string junk(gen() % 160, '\0');
        for (auto& ch : junk) {
            ch = static_cast<char>(gen() % 256);
        }
        const auto result = qasm::parse(junk); // must not throw or hang
        if (!result.ok()) {
            for (const auto& d : result.diagnostics) {
                CHECK(d.span.byte_begin <= junk.size());
                CHECK(d.span.byte_end <= junk.size());
            }
        }
    }
    // Mutated fragments of a valid program exercise deeper parser states.
    const std::string base = kShowcaseProgram;
    for (int trial = 0; trial < 300; ++trial) {
        std::string mutated = base;
        for (int edits = 0; edits < 4; ++edits) {
            mutated[gen() % mutated.size()] = static_cast<char>(gen() % 128);
        }
        (void)qasm::parse(mutated);
    }
}
