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

#ifndef DITKIT_GATES_HPP
#define DITKIT_GATES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ditkit/core.hpp"
#include "ditkit/matrix.hpp"

namespace ditkit {

/// Two-level rotation block
///   diag(e^{i alpha}, e^{i beta}) * [[cos(t/2), -i e^{-i phi} sin(t/2)],
///                                    [-i e^{i phi} sin(t/2), cos(t/2)]].
/// alpha = beta = 0 gives the plain subspace rotation used by rxy.
Matrix rotation_block(double theta, double phi, double alpha = 0.0,
                      double beta = 0.0);

/// Numeric realization of a gate on its operand space. `operand_dims` has
/// one entry per operand line (controls are not part of the operand space;
/// see controlled_matrix / the application kernel for those).
Matrix gate_matrix(const GateSpec& gate,
                   std::span<const std::size_t> operand_dims);

/// Per-operand-line dimensions of a gate within a circuit-wide `dims` list.
std::vector<std::size_t> operand_dims(const GateSpec& gate,
                                      std::span<const std::size_t> dims);

/// Embeds `base` on a control+target space with layout (controls..., targets):
/// the result acts as `base` where every control qudit holds its level and as
/// identity elsewhere.
Matrix controlled_matrix(const Matrix& base,
                         std::span<const std::size_t> control_dims,
                         std::span<const std::size_t> control_levels);

/// Applies a gate to a mixed-radix amplitude vector by iterating over the
/// fibers of the operand lines; the full-space matrix is never materialized.
void apply_gate_in_place(std::vector<Complex>& amplitudes,
                         std::span<const std::size_t> dims,
                         const GateSpec& gate);

/// Full-space matrix of one gate, built by basis-state enumeration.
/// Slow; intended as an independent cross-check for the application kernel.
Matrix embedded_gate_matrix(const GateSpec& gate,
                            std::span<const std::size_t> dims);

/// Product of the per-instruction matrices in program order (later gates
/// multiply from the left). Rejects measurements and circuits larger than
/// `dim_cap`.
Matrix circuit_unitary(const Circuit& circuit, std::uint64_t dim_cap = 4096);

} // namespace ditkit

#endif
