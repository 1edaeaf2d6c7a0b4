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

#include "ditkit/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ditkit {

namespace {

using std::numbers::pi;

Matrix shift_matrix(std::size_t d) {
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        m((j + 1) % d, j) = 1.0;
    }
    return m;
}

Matrix clock_matrix(std::size_t d) {
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        m(j, j) = std::polar(1.0, 2.0 * pi * static_cast<double>(j) /
                                      static_cast<double>(d));
    }
    return m;
}

Matrix phase_matrix(std::size_t d) {
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        m(j, j) = std::polar(1.0, pi * static_cast<double>(j * j) /
                                      static_cast<double>(d));
    }
    return m;
}

Matrix fourier_matrix(std::size_t d) {
    Matrix m(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            m(j, k) = scale * std::polar(1.0, 2.0 * pi * static_cast<double>(j * k) /
                                                  static_cast<double>(d));
        }
    }
    return m;
}

Matrix csum_matrix(std::size_t dc, std::size_t dt) {
    Matrix m(dc * dt, dc * dt);
    for (std::size_t c = 0; c < dc; ++c) {
        for (std::size_t t = 0; t < dt; ++t) {
            m(c * dt + (t + c) % dt, c * dt + t) = 1.0;
        }
    }
    return m;
}

/// Spin-(d-1)/2 ladder sum: symmetric with sqrt((j+1)(d-1-j)) off-diagonals.
std::vector<double> spin_x(std::size_t d) {
    std::vector<double> m(d * d, 0.0);
    for (std::size_t j = 0; j + 1 < d; ++j) {
        const double v = std::sqrt(static_cast<double>((j + 1) * (d - 1 - j)));
        m[j * d + (j + 1)] = v;
        m[(j + 1) * d + j] = v;
    }
    return m;
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix; returns
/// eigenvalues and orthonormal eigenvector columns.
void sym_eig(std::vector<double> a, std::size_t n, std::vector<double>& eigvals,
             std::vector<double>& eigvecs) {
    eigvecs.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        eigvecs[i * n + i] = 1.0;
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if (off < 1e-26) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = eigvecs[k * n + p];
                    const double vkq = eigvecs[k * n + q];
                    eigvecs[k * n + p] = c * vkp - s * vkq;
                    eigvecs[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    eigvals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigvals[i] = a[i * n + i];
    }
}

/// exp(-i t (Jx (x) I + I (x) Jx)^2) on dims (d1, d2).
Matrix ms_matrix(std::size_t d1, std::size_t d2, double theta) {
    const std::size_t n = d1 * d2;
    const std::vector<double> jx1 = spin_x(d1);
    const std::vector<double> jx2 = spin_x(d2);
    std::vector<double> gen(n * n, 0.0); // Jx (x) I + I (x) Jx
    for (std::size_t a = 0; a < d1; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
            for (std::size_t c = 0; c < d1; ++c) {
                gen[(a * d2 + b) * n + (c * d2 + b)] += jx1[a * d1 + c];
            }
            for (std::size_t e = 0; e < d2; ++e) {
                gen[(a * d2 + b) * n + (a * d2 + e)] += jx2[b * d2 + e];
            }
        }
    }
    std::vector<double> squared(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double g = gen[i * n + k];
            if (g == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                squared[i * n + j] += g * gen[k * n + j];
            }
        }
    }
    std::vector<double> eigvals;
    std::vector<double> eigvecs;
    sym_eig(std::move(squared), n, eigvals, eigvecs);

    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += eigvecs[i * n + k] * std::polar(1.0, -theta / 4.0 * eigvals[k]) *
                       eigvecs[j * n + k];
            }
            out(i, j) = sum;
        }
    }
    return out;
}

/// exp(-i t Jz (x) Jz) on dims (d1, d2); diagonal.
Matrix ls_matrix(std::size_t d1, std::size_t d2, double theta) {
    Matrix out(d1 * d2, d1 * d2);
    for (std::size_t a = 0; a < d1; ++a) {
        const double za = (static_cast<double>(d1) - 1.0) / 2.0 - static_cast<double>(a);
        for (std::size_t b = 0; b < d2; ++b) {
            const double zb =
                (static_cast<double>(d2) - 1.0) / 2.0 - static_cast<double>(b);
            out(a * d2 + b, a * d2 + b) = std::polar(1.0, -theta * za * zb);
        }
    }
    return out;
}

Matrix two_level_embedding(std::size_t dim, std::size_t p, std::size_t q,
                           const Matrix& block) {
    Matrix m = Matrix::identity(dim);
    m(p, p) = block(0, 0);
    m(p, q) = block(0, 1);
    m(q, p) = block(1, 0);
    m(q, q) = block(1, 1);
    return m;
}

} // namespace

Matrix rotation_block(double theta, double phi, double alpha, double beta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex minus_i(0.0, -1.0);
    Matrix b(2, 2);
    b(0, 0) = std::polar(1.0, alpha) * c;
    b(0, 1) = std::polar(1.0, alpha) * minus_i * std::polar(1.0, -phi) * s;
    b(1, 0) = std::polar(1.0, beta) * minus_i * std::polar(1.0, phi) * s;
    b(1, 1) = std::polar(1.0, beta) * c;
    return b;
}

std::vector<std::size_t> operand_dims(const GateSpec& gate,
                                      std::span<const std::size_t> dims) {
    std::vector<std::size_t> out;
    out.reserve(gate.lines.size());
    for (const std::size_t line : gate.lines) {
        if (line >= dims.size()) {
            throw std::invalid_argument("gate line out of range");
        }
        out.push_back(dims[line]);
    }
    return out;
}

Matrix gate_matrix(const GateSpec& gate,
                   std::span<const std::size_t> operand_dims) {
    const GateTraits* traits = gate_traits(gate.name);
    if (traits == nullptr && gate.name != "cu") {
        throw std::invalid_argument("unknown gate '" + gate.name + "'");
    }
    if (gate.name == "cu") {
        if (!gate.custom_matrix) {
            throw std::invalid_argument("cu requires a custom matrix");
        }
        if (!gate.custom_matrix->is_unitary(1e-10)) {
            throw std::invalid_argument("cu matrix is not unitary within 1e-10");
        }
        return *gate.custom_matrix;
    }
    if (operand_dims.size() != traits->operands) {
        throw std::invalid_argument("gate '" + gate.name + "' operand count mismatch");
    }
    if (gate.params.size() != traits->params) {
        throw std::invalid_argument("gate '" + gate.name + "' parameter count mismatch");
    }

    const std::size_t d = operand_dims[0];
    if (gate.name == "x") {
        return shift_matrix(d);
    }
    if (gate.name == "z") {
        return clock_matrix(d);
    }
    if (gate.name == "s") {
        return phase_matrix(d);
    }
    if (gate.name == "h") {
        return fourier_matrix(d);
    }
    if (gate.name == "rxy" || gate.name == "crot") {
        const auto l1 = static_cast<std::size_t>(gate.params[0]);
        const auto l2 = static_cast<std::size_t>(gate.params[1]);
        if (!(l1 < l2 && l2 < d)) {
            throw std::invalid_argument("subspace level " + std::to_string(l2) +
                                        " >= dimension " + std::to_string(d));
        }
        const double alpha = gate.name == "crot" ? gate.params[4] : 0.0;
        const double beta = gate.name == "crot" ? gate.params[5] : 0.0;
        return two_level_embedding(
            d, l1, l2, rotation_block(gate.params[2], gate.params[3], alpha, beta));
    }
    if (gate.name == "rz") {
        const auto l1 = static_cast<std::size_t>(gate.params[0]);
        const auto l2 = static_cast<std::size_t>(gate.params[1]);
        if (!(l1 < l2 && l2 < d)) {
            throw std::invalid_argument("subspace level " + std::to_string(l2) +
                                        " >= dimension " + std::to_string(d));
        }
        Matrix m = Matrix::identity(d);
        m(l1, l1) = std::polar(1.0, -gate.params[2] / 2.0);
        m(l2, l2) = std::polar(1.0, gate.params[2] / 2.0);
        return m;
    }
    if (gate.name == "csum") {
        return csum_matrix(operand_dims[0], operand_dims[1]);
    }
    if (gate.name == "ms") {
        return ms_matrix(operand_dims[0], operand_dims[1], gate.params[0]);
    }
    if (gate.name == "ls") {
        return ls_matrix(operand_dims[0], operand_dims[1], gate.params[0]);
    }
    if (gate.name == "pswap") {
        const std::size_t d2 = operand_dims[1];
        const auto a1 = static_cast<std::size_t>(gate.params[0]);
        const auto a2 = static_cast<std::size_t>(gate.params[1]);
        const auto b1 = static_cast<std::size_t>(gate.params[2]);
        const auto b2 = static_cast<std::size_t>(gate.params[3]);
        if (a1 >= operand_dims[0] || b1 >= operand_dims[0] || a2 >= d2 || b2 >= d2) {
            throw std::invalid_argument("pswap basis level out of range");
        }
        return two_level_embedding(
            operand_dims[0] * d2, a1 * d2 + a2, b1 * d2 + b2,
            rotation_block(gate.params[4], gate.params[5], gate.params[6],
                           gate.params[7]));
    }
    throw std::invalid_argument("unknown gate '" + gate.name + "'");
}

Matrix controlled_matrix(const Matrix& base,
                         std::span<const std::size_t> control_dims,
                         std::span<const std::size_t> control_levels) {
    if (control_dims.size() != control_levels.size()) {
        throw std::invalid_argument("control dims/levels size mismatch");
    }
    for (std::size_t i = 0; i < control_dims.size(); ++i) {
        if (control_levels[i] >= control_dims[i]) {
            throw std::invalid_argument("control level out of range");
        }
    }
    const std::size_t control_space = *checked_total_dimension(control_dims);
    const std::size_t active = radix_index(control_levels, control_dims);
    const std::size_t n = base.rows();
    Matrix out = Matrix::identity(control_space * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(active * n + i, active * n + j) = base(i, j);
        }
    }
    return out;
}

namespace {

struct GatePlan {
    Matrix matrix;                       // operand-space unitary
    std::vector<std::size_t> lines;      // operand lines
    std::vector<std::size_t> strides;    // full-space stride per operand line
    std::vector<std::size_t> line_dims;  // dimension per operand line
    std::vector<std::size_t> fiber_offsets; // operand-index -> amp offset
    std::vector<std::pair<std::size_t, std::size_t>> controls; // (line, level)
};

GatePlan plan_gate(std::span<const std::size_t> dims, const GateSpec& gate) {
    GatePlan plan;
    plan.lines = gate.lines;
    plan.line_dims = operand_dims(gate, dims);
    plan.matrix = gate_matrix(gate, plan.line_dims);
    const auto strides = radix_strides(dims);
    for (const std::size_t line : gate.lines) {
        plan.strides.push_back(strides[line]);
    }
    if (gate.control) {
        plan.controls = gate.control->controls;
        for (const auto& [line, level] : plan.controls) {
            if (line >= dims.size() || level >= dims[line]) {
                throw std::invalid_argument("control line/level out of range");
            }
        }
    }
    const std::size_t fiber = plan.matrix.rows();
    plan.fiber_offsets.resize(fiber);
    for (std::size_t t = 0; t < fiber; ++t) {
        std::size_t rem = t;
        std::size_t offset = 0;
        for (std::size_t k = plan.line_dims.size(); k-- > 0;) {
            offset += (rem % plan.line_dims[k]) * plan.strides[k];
            rem /= plan.line_dims[k];
        }
        plan.fiber_offsets[t] = offset;
    }
    return plan;
}

void apply_plan(std::vector<Complex>& amps, std::span<const std::size_t> dims,
                const GatePlan& plan) {
    const std::size_t fiber = plan.matrix.rows();

    // Enumerate the fibers: iterate over all digit assignments of the
    // non-operand lines and splice zeros in at the operand positions.
    std::vector<std::size_t> rest_positions;
    std::vector<std::size_t> rest_dims;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (std::find(plan.lines.begin(), plan.lines.end(), i) == plan.lines.end()) {
            rest_positions.push_back(i);
            rest_dims.push_back(dims[i]);
        }
    }
    std::vector<std::size_t> control_slots(plan.controls.size());
    for (std::size_t c = 0; c < plan.controls.size(); ++c) {
        const auto it = std::find(rest_positions.begin(), rest_positions.end(),
                                  plan.controls[c].first);
        control_slots[c] = static_cast<std::size_t>(it - rest_positions.begin());
    }
    const auto strides = radix_strides(dims);

    std::size_t rest_count = 1;
    for (const std::size_t d : rest_dims) {
        rest_count *= d;
    }

    std::vector<Complex> in(fiber);
    std::vector<std::size_t> rest_digits(rest_dims.size());
    for (std::size_t outer = 0; outer < rest_count; ++outer) {
        std::size_t rem = outer;
        for (std::size_t i = rest_dims.size(); i-- > 0;) {
            rest_digits[i] = rem % rest_dims[i];
            rem /= rest_dims[i];
        }
        bool active = true;
        for (std::size_t c = 0; c < plan.controls.size(); ++c) {
            if (rest_digits[control_slots[c]] != plan.controls[c].second) {
                active = false;
                break;
            }
        }
        if (!active) {
            continue;
        }
        std::size_t base = 0;
        for (std::size_t i = 0; i < rest_dims.size(); ++i) {
            base += rest_digits[i] * strides[rest_positions[i]];
        }
        for (std::size_t t = 0; t < fiber; ++t) {
            in[t] = amps[base + plan.fiber_offsets[t]];
        }
        for (std::size_t t = 0; t < fiber; ++t) {
            Complex sum = 0.0;
            for (std::size_t u = 0; u < fiber; ++u) {
                const Complex m = plan.matrix(t, u);
                if (m != 0.0) {
                    sum += m * in[u];
                }
            }
            amps[base + plan.fiber_offsets[t]] = sum;
        }
    }
}

} // namespace

void apply_gate_in_place(std::vector<Complex>& amplitudes,
                         std::span<const std::size_t> dims,
                         const GateSpec& gate) {
    const auto total = checked_total_dimension(dims);
    if (!total || amplitudes.size() != *total) {
        throw std::invalid_argument("amplitude vector length mismatch");
    }
    apply_plan(amplitudes, dims, plan_gate(dims, gate));
}

Matrix embedded_gate_matrix(const GateSpec& gate,
                            std::span<const std::size_t> dims) {
    const auto total = checked_total_dimension(dims);
    if (!total) {
        throw std::domain_error("dimension overflow");
    }
    const std::size_t n = static_cast<std::size_t>(*total);
    const std::vector<std::size_t> op_dims = operand_dims(gate, dims);
    const Matrix m = gate_matrix(gate, op_dims);
    Matrix out(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const auto digits = index_to_digits(col, dims);
        bool active = true;
        if (gate.control) {
            for (const auto& [line, level] : gate.control->controls) {
                if (digits[line] != level) {
                    active = false;
                    break;
                }
            }
        }
        if (!active) {
            out(col, col) = 1.0;
            continue;
        }
        std::vector<std::size_t> op_digits(gate.lines.size());
        for (std::size_t k = 0; k < gate.lines.size(); ++k) {
            op_digits[k] = digits[gate.lines[k]];
        }
        const std::size_t u = radix_index(op_digits, op_dims);
        for (std::size_t t = 0; t < m.rows(); ++t) {
            if (m(t, u) == 0.0) {
                continue;
            }
            auto row_digits = digits;
            std::size_t rem = t;
            for (std::size_t k = gate.lines.size(); k-- > 0;) {
                row_digits[gate.lines[k]] = rem % op_dims[k];
                rem /= op_dims[k];
            }
            out(radix_index(row_digits, dims), col) = m(t, u);
        }
    }
    return out;
}

Matrix circuit_unitary(const Circuit& circuit, std::uint64_t dim_cap) {
    if (circuit.has_measurements()) {
        throw std::invalid_argument("circuit_unitary: circuit contains measurements");
    }
    const auto total = circuit.total_dimension();
    if (!total || *total > dim_cap) {
        throw std::domain_error("circuit_unitary: dimension exceeds cap of " +
                                std::to_string(dim_cap));
    }
    const auto n = static_cast<std::size_t>(*total);
    Matrix u = Matrix::identity(n);
    std::vector<Complex> column(n);
    for (const auto& instruction : circuit.instructions()) {
        const GatePlan plan = plan_gate(circuit.dims(), instruction.gate());
        for (std::size_t col = 0; col < n; ++col) {
            for (std::size_t row = 0; row < n; ++row) {
                column[row] = u(row, col);
            }
            apply_plan(column, circuit.dims(), plan);
            for (std::size_t row = 0; row < n; ++row) {
                u(row, col) = column[row];
            }
        }
    }
    return u;
}

} // namespace ditkit
