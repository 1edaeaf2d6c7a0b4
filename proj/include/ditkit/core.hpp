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

#ifndef DITKIT_CORE_HPP
#define DITKIT_CORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ditkit/matrix.hpp"

namespace ditkit {

// ---------------------------------------------------------------------------
// Mixed-radix arithmetic.
//
// Basis ordering convention used everywhere in ditkit: the first-declared
// qudit is the most significant digit, so a state |v0 v1 ... v_{n-1}> sits at
// index sum_i v_i * stride_i with stride_i = prod_{j>i} d_j.
// ---------------------------------------------------------------------------

std::vector<std::size_t> radix_strides(std::span<const std::size_t> dims);

std::size_t radix_index(std::span<const std::size_t> digits,
                        std::span<const std::size_t> dims);

std::vector<std::size_t> index_to_digits(std::size_t index,
                                         std::span<const std::size_t> dims);

/// prod_i d_i, or nullopt if the product does not fit in 64 bits.
std::optional<std::uint64_t>
checked_total_dimension(std::span<const std::size_t> dims);

/// "2,0,1" — the textual outcome key used by counts and state dumps.
std::string format_digit_key(std::span<const std::size_t> digits);

// ---------------------------------------------------------------------------
// Registers and instructions.
// ---------------------------------------------------------------------------

struct QuantumRegister {
    std::string name;
    std::vector<std::size_t> dims; // one entry per qudit, each >= 2

    std::size_t size() const { return dims.size(); }
};

struct ClassicRegister {
    std::string name;
    std::size_t size = 0;
};

/// Control condition of a gate: the gate acts only on the subspace where
/// every listed line holds its required level.
struct ControlSpec {
    std::vector<std::pair<std::size_t, std::size_t>> controls; // (line, level)
};

struct GateSpec {
    std::string name;
    std::vector<double> params;
    std::vector<std::size_t> lines;
    std::optional<ControlSpec> control;
    std::optional<Matrix> custom_matrix; // only for name == "cu"

    /// Operand + control lines, in that order.
    std::vector<std::size_t> touched_lines() const;
};

struct Measurement {
    std::size_t line = 0; // qudit line
    std::size_t cell = 0; // classical cell
};

struct Instruction {
    std::variant<GateSpec, Measurement> op;

    bool is_gate() const { return std::holds_alternative<GateSpec>(op); }
    const GateSpec& gate() const { return std::get<GateSpec>(op); }
    const Measurement& measurement() const { return std::get<Measurement>(op); }
};

// ---------------------------------------------------------------------------
// Gate registry.
// ---------------------------------------------------------------------------

struct GateTraits {
    std::size_t operands;     // operand lines (controls not included)
    std::size_t params;       // fixed parameter arity
    std::size_t level_params; // leading params that are integer level indices
    bool requires_control;    // "crot" carries exactly one control
};

/// Traits for a supported gate name, or nullptr when unknown.
/// "cu" is special-cased by callers (variable operand count, custom matrix).
const GateTraits* gate_traits(std::string_view name);

/// All gate names accepted in circuits and noise models.
std::span<const std::string_view> supported_gate_names();

// ---------------------------------------------------------------------------
// Circuit.
// ---------------------------------------------------------------------------

/// Ordered instruction list over named mixed-dimensional registers.
/// Instructions are validated as they are appended; measurements are
/// terminal (no gate may touch a line after it has been measured).
class Circuit {
  public:
    void add_quantum_register(QuantumRegister reg);
    void add_classic_register(ClassicRegister reg);
    void add_gate(GateSpec gate);
    void add_measurement(std::size_t line, std::size_t cell);

    const std::vector<QuantumRegister>& quantum_registers() const {
        return qregs_;
    }
    const std::vector<ClassicRegister>& classic_registers() const {
        return cregs_;
    }
    const std::vector<Instruction>& instructions() const {
        return instructions_;
    }

    std::size_t num_lines() const { return dims_.size(); }
    std::size_t num_cells() const { return num_cells_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::optional<std::uint64_t> total_dimension() const;

    /// Line index of reg[offset]; throws if unknown.
    std::size_t line_of(std::string_view reg, std::size_t offset) const;
    std::size_t cell_of(std::string_view reg, std::size_t offset) const;

    /// "reg_1[0]" spelling of a line / classical cell.
    std::string line_label(std::size_t line) const;
    std::string cell_label(std::size_t cell) const;

    void set_initial_state(std::vector<Complex> amplitudes);
    const std::optional<std::vector<Complex>>& initial_state() const {
        return initial_state_;
    }
    void clear_initial_state() { initial_state_.reset(); }

    bool has_measurements() const { return num_measurements_ > 0; }
    std::size_t num_measurements() const { return num_measurements_; }

    /// Measured lines in classical-cell order.
    std::vector<std::size_t> measured_lines() const;

    /// Same registers, no instructions, no initial state.
    Circuit layout_clone() const;

  private:
    void check_gate(const GateSpec& gate) const;

    std::vector<QuantumRegister> qregs_;
    std::vector<ClassicRegister> cregs_;
    std::vector<Instruction> instructions_;
    std::vector<std::size_t> dims_;      // flattened per-line dimensions
    std::vector<std::size_t> qreg_base_; // first line of each register
    std::vector<std::size_t> creg_base_; // first cell of each register
    std::size_t num_cells_ = 0;
    std::size_t num_measurements_ = 0;
    std::vector<bool> line_measured_;
    std::map<std::size_t, std::size_t> cell_to_line_;
    std::optional<std::vector<Complex>> initial_state_;
};

// ---------------------------------------------------------------------------
// Circuit summary.
// ---------------------------------------------------------------------------

struct CircuitStats {
    std::map<std::string, std::size_t> gate_counts;
    std::size_t gates = 0;
    std::size_t entangling_gates = 0; // gates touching >= 2 lines
    std::size_t measurements = 0;
    std::size_t depth = 0; // longest line-wise dependency chain
    std::size_t qudits = 0;
    std::optional<std::uint64_t> total_dimension;
};

CircuitStats circuit_stats(const Circuit& circuit);

} // namespace ditkit

#endif
