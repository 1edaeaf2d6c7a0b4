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

#include "ditkit/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ditkit {

std::vector<std::size_t> radix_strides(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * dims[i];
    }
    return strides;
}

std::size_t radix_index(std::span<const std::size_t> digits,
                        std::span<const std::size_t> dims) {
    if (digits.size() != dims.size()) {
        throw std::invalid_argument("radix_index: digit/dimension count mismatch");
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (digits[i] >= dims[i]) {
            throw std::domain_error("radix_index: digit " +
                                    std::to_string(digits[i]) + " out of range for qudit " +
                                    std::to_string(i) + " of dimension " +
                                    std::to_string(dims[i]));
        }
        index = index * dims[i] + digits[i];
    }
    return index;
}

std::vector<std::size_t> index_to_digits(std::size_t index,
                                         std::span<const std::size_t> dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        digits[i] = index % dims[i];
        index /= dims[i];
    }
    if (index != 0) {
        throw std::domain_error("index_to_digits: index out of range");
    }
    return digits;
}

std::optional<std::uint64_t>
checked_total_dimension(std::span<const std::size_t> dims) {
    std::uint64_t total = 1;
    for (const std::size_t d : dims) {
        if (d != 0 && total > UINT64_MAX / d) {
            return std::nullopt;
        }
        total *= d;
    }
    return total;
}

std::string format_digit_key(std::span<const std::size_t> digits) {
    std::string key;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0) {
            key += ',';
        }
        key += std::to_string(digits[i]);
    }
    return key;
}

std::vector<std::size_t> GateSpec::touched_lines() const {
    std::vector<std::size_t> all = lines;
    if (control) {
        for (const auto& [line, level] : control->controls) {
            all.push_back(line);
        }
    }
    return all;
}

namespace {

struct NamedTraits {
    std::string_view name;
    GateTraits traits;
};

// clang-format off
constexpr std::array<NamedTraits, 11> kGateTable{{
    {"x",     {1, 0, 0, false}},
    {"z",     {1, 0, 0, false}},
    {"s",     {1, 0, 0, false}},
    {"h",     {1, 0, 0, false}},
    {"rxy",   {1, 4, 2, false}}, // l1, l2, theta, phi
    {"rz",    {1, 3, 2, false}}, // l1, l2, theta
    {"csum",  {2, 0, 0, false}}, // first operand controls
    {"ms",    {2, 1, 0, false}}, // theta
    {"ls",    {2, 1, 0, false}}, // theta
    {"crot",  {1, 6, 2, true}},  // l1, l2, theta, phi, alpha, beta
    {"pswap", {2, 8, 4, false}}, // a1, a2, b1, b2, theta, phi, alpha, beta
}};
// clang-format on

constexpr std::array<std::string_view, 12> kGateNames{
    "x",  "z",  "s",    "h",  "rxy",  "rz",
    "csum", "ms", "ls", "crot", "pswap", "cu"};

} // namespace

const GateTraits* gate_traits(std::string_view name) {
    for (const auto& entry : kGateTable) {
        if (entry.name == name) {
            return &entry.traits;
        }
    }
    return nullptr;
}

std::span<const std::string_view> supported_gate_names() {
    return kGateNames;
}

void Circuit::add_quantum_register(QuantumRegister reg) {
    if (reg.name.empty()) {
        throw std::invalid_argument("quantum register needs a name");
    }
    if (reg.dims.empty()) {
        throw std::invalid_argument("quantum register '" + reg.name +
                                    "' must hold at least one qudit");
    }
    for (const std::size_t d : reg.dims) {
        if (d < 2) {
            throw std::invalid_argument("qudit dimension must be >= 2 in register '" +
                                        reg.name + "'");
        }
    }
    for (const auto& existing : qregs_) {
        if (existing.name == reg.name) {
            throw std::invalid_argument("register '" + reg.name + "' redeclared");
        }
    }
    for (const auto& existing : cregs_) {
        if (existing.name == reg.name) {
            throw std::invalid_argument("register '" + reg.name + "' redeclared");
        }
    }
    qreg_base_.push_back(dims_.size());
    dims_.insert(dims_.end(), reg.dims.begin(), reg.dims.end());
    line_measured_.resize(dims_.size(), false);
    qregs_.push_back(std::move(reg));
}

void Circuit::add_classic_register(ClassicRegister reg) {
    if (reg.name.empty() || reg.size == 0) {
        throw std::invalid_argument("classical register needs a name and size >= 1");
    }
    for (const auto& existing : cregs_) {
        if (existing.name == reg.name) {
            throw std::invalid_argument("register '" + reg.name + "' redeclared");
        }
    }
    for (const auto& existing : qregs_) {
        if (existing.name == reg.name) {
            throw std::invalid_argument("register '" + reg.name + "' redeclared");
        }
    }
    creg_base_.push_back(num_cells_);
    num_cells_ += reg.size;
    cregs_.push_back(std::move(reg));
}

void Circuit::check_gate(const GateSpec& gate) const {
    const GateTraits* traits = gate_traits(gate.name);
    if (traits == nullptr && gate.name != "cu") {
        throw std::invalid_argument("unknown gate '" + gate.name + "'");
    }

    for (const std::size_t line : gate.lines) {
        if (line >= dims_.size()) {
            throw std::invalid_argument("gate '" + gate.name + "' references line " +
                                        std::to_string(line) + " out of range");
        }
    }

    std::set<std::size_t> seen(gate.lines.begin(), gate.lines.end());
    if (seen.size() != gate.lines.size()) {
        throw std::invalid_argument("gate '" + gate.name + "' repeats an operand line");
    }
    if (gate.control) {
        for (const auto& [line, level] : gate.control->controls) {
            if (line >= dims_.size()) {
                throw std::invalid_argument("control line " + std::to_string(line) +
                                            " out of range");
            }
            if (!seen.insert(line).second) {
                throw std::invalid_argument(
                    "control line " + std::to_string(line) +
                    " overlaps another operand of gate '" + gate.name + "'");
            }
            if (level >= dims_[line]) {
                throw std::invalid_argument(
                    "control level " + std::to_string(level) + " >= dimension " +
                    std::to_string(dims_[line]) + " of line " + std::to_string(line));
            }
        }
    }

    if (gate.name == "cu") {
        if (gate.lines.empty() || gate.lines.size() > 2) {
            throw std::invalid_argument("cu acts on one or two qudits");
        }
        if (!gate.custom_matrix) {
            throw std::invalid_argument("cu requires a custom matrix");
        }
        std::size_t dim = 1;
        for (const std::size_t line : gate.lines) {
            dim *= dims_[line];
        }
        if (gate.custom_matrix->rows() != dim || gate.custom_matrix->cols() != dim) {
            throw std::invalid_argument("cu matrix shape does not match operand dimensions");
        }
        if (!gate.custom_matrix->is_unitary(1e-10)) {
            throw std::invalid_argument("cu matrix is not unitary within 1e-10");
        }
        return;
    }

    if (gate.custom_matrix) {
        throw std::invalid_argument("only cu carries a custom matrix");
    }
    if (gate.lines.size() != traits->operands) {
        throw std::invalid_argument("gate '" + gate.name + "' expects " +
                                    std::to_string(traits->operands) + " operand(s), got " +
                                    std::to_string(gate.lines.size()));
    }
    if (gate.params.size() != traits->params) {
        throw std::invalid_argument("gate '" + gate.name + "' expects " +
                                    std::to_string(traits->params) + " parameter(s), got " +
                                    std::to_string(gate.params.size()));
    }
    if (traits->requires_control &&
        (!gate.control || gate.control->controls.size() != 1)) {
        throw std::invalid_argument("gate '" + gate.name + "' requires exactly one control");
    }

    // Leading level parameters must be integers within the operand dimension.
    for (std::size_t i = 0; i < traits->level_params; ++i) {
        const double p = gate.params[i];
        if (p < 0 || p != std::floor(p)) {
            throw std::invalid_argument("gate '" + gate.name + "': level parameter " +
                                        std::to_string(i) + " must be a non-negative integer");
        }
    }
    if (gate.name == "rxy" || gate.name == "rz" || gate.name == "crot") {
        const auto l1 = static_cast<std::size_t>(gate.params[0]);
        const auto l2 = static_cast<std::size_t>(gate.params[1]);
        const std::size_t d = dims_[gate.lines[0]];
        if (!(l1 < l2 && l2 < d)) {
            throw std::invalid_argument(
                "gate '" + gate.name + "': subspace level " + std::to_string(std::max(l1, l2)) +
                " >= dimension " + std::to_string(d) + " or levels not ordered");
        }
    } else if (gate.name == "pswap") {
        const std::size_t d1 = dims_[gate.lines[0]];
        const std::size_t d2 = dims_[gate.lines[1]];
        const auto a1 = static_cast<std::size_t>(gate.params[0]);
        const auto a2 = static_cast<std::size_t>(gate.params[1]);
        const auto b1 = static_cast<std::size_t>(gate.params[2]);
        const auto b2 = static_cast<std::size_t>(gate.params[3]);
        if (a1 >= d1 || b1 >= d1 || a2 >= d2 || b2 >= d2) {
            throw std::invalid_argument("pswap: basis level out of range");
        }
        if (a1 == b1 || a2 == b2) {
            throw std::invalid_argument(
                "pswap couples basis states that must differ in both qudits");
        }
    }
}

void Circuit::add_gate(GateSpec gate) {
    check_gate(gate);
    for (const std::size_t line : gate.touched_lines()) {
        if (line_measured_[line]) {
            throw std::invalid_argument("gate '" + gate.name + "' touches line " +
                                        std::to_string(line) +
                                        " after it has been measured");
        }
    }
    instructions_.push_back(Instruction{std::move(gate)});
}

void Circuit::add_measurement(std::size_t line, std::size_t cell) {
    if (line >= dims_.size()) {
        throw std::invalid_argument("measurement references line out of range");
    }
    if (cell >= num_cells_) {
        throw std::invalid_argument("measurement references classical cell out of range");
    }
    if (line_measured_[line]) {
        throw std::invalid_argument("line " + std::to_string(line) + " measured twice");
    }
    if (cell_to_line_.contains(cell)) {
        throw std::invalid_argument("classical cell " + std::to_string(cell) +
                                    " written twice");
    }
    line_measured_[line] = true;
    cell_to_line_[cell] = line;
    ++num_measurements_;
    instructions_.push_back(Instruction{Measurement{line, cell}});
}

std::optional<std::uint64_t> Circuit::total_dimension() const {
    return checked_total_dimension(dims_);
}

std::size_t Circuit::line_of(std::string_view reg, std::size_t offset) const {
    for (std::size_t i = 0; i < qregs_.size(); ++i) {
        if (qregs_[i].name == reg) {
            if (offset >= qregs_[i].size()) {
                throw std::invalid_argument("index " + std::to_string(offset) +
                                            " out of range for register '" +
                                            std::string(reg) + "'");
            }
            return qreg_base_[i] + offset;
        }
    }
    throw std::invalid_argument("unknown quantum register '" + std::string(reg) + "'");
}

std::size_t Circuit::cell_of(std::string_view reg, std::size_t offset) const {
    for (std::size_t i = 0; i < cregs_.size(); ++i) {
        if (cregs_[i].name == reg) {
            if (offset >= cregs_[i].size) {
                throw std::invalid_argument("index " + std::to_string(offset) +
                                            " out of range for register '" +
                                            std::string(reg) + "'");
            }
            return creg_base_[i] + offset;
        }
    }
    throw std::invalid_argument("unknown classical register '" + std::string(reg) + "'");
}

std::string Circuit::line_label(std::size_t line) const {
    for (std::size_t i = qregs_.size(); i-- > 0;) {
        if (line >= qreg_base_[i]) {
            return qregs_[i].name + "[" + std::to_string(line - qreg_base_[i]) + "]";
        }
    }
    throw std::invalid_argument("line out of range");
}

std::string Circuit::cell_label(std::size_t cell) const {
    for (std::size_t i = cregs_.size(); i-- > 0;) {
        if (cell >= creg_base_[i]) {
            return cregs_[i].name + "[" + std::to_string(cell - creg_base_[i]) + "]";
        }
    }
    throw std::invalid_argument("classical cell out of range");
}

void Circuit::set_initial_state(std::vector<Complex> amplitudes) {
    const auto total = total_dimension();
    if (!total || amplitudes.size() != *total) {
        throw std::invalid_argument("initial state length must equal the circuit dimension");
    }
    double norm = 0.0;
    for (const Complex& a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("initial state is not normalized");
    }
    initial_state_ = std::move(amplitudes);
}

std::vector<std::size_t> Circuit::measured_lines() const {
    std::vector<std::size_t> lines;
    lines.reserve(cell_to_line_.size());
    for (const auto& [cell, line] : cell_to_line_) {
        lines.push_back(line);
    }
    return lines;
}

Circuit Circuit::layout_clone() const {
    Circuit out;
    for (const auto& reg : qregs_) {
        out.add_quantum_register(reg);
    }
    for (const auto& reg : cregs_) {
        out.add_classic_register(reg);
    }
    return out;
}

CircuitStats circuit_stats(const Circuit& circuit) {
    CircuitStats stats;
    stats.qudits = circuit.num_lines();
    stats.total_dimension = circuit.total_dimension();

    std::vector<std::size_t> line_depth(circuit.num_lines(), 0);
    for (const auto& instruction : circuit.instructions()) {
        std::vector<std::size_t> touched;
        if (instruction.is_gate()) {
            const GateSpec& gate = instruction.gate();
            ++stats.gates;
            ++stats.gate_counts[gate.name];
            touched = gate.touched_lines();
            if (touched.size() >= 2) {
                ++stats.entangling_gates;
            }
        } else {
            ++stats.measurements;
            touched = {instruction.measurement().line};
        }
        std::size_t level = 0;
        for (const std::size_t line : touched) {
            level = std::max(level, line_depth[line]);
        }
        ++level;
        for (const std::size_t line : touched) {
            line_depth[line] = level;
        }
        stats.depth = std::max(stats.depth, level);
    }
    return stats;
}

} // namespace ditkit
