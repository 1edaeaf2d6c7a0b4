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

#ifndef DITKIT_COMPILER_HPP
#define DITKIT_COMPILER_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ditkit/core.hpp"
#include "ditkit/device.hpp"
#include "ditkit/matrix.hpp"
#include "ditkit/statevector.hpp"

namespace ditkit::compiler {

/// One two-level operation emitted by the decomposition routines.
///
/// rxy / rz     — local subspace rotation on levels (l1, l2).
/// crot         — controlled two-level rotation: acts on the target qudit's
///                (l1, l2) subspace when the control qudit holds
///                control_level. The block carries two extra phases
///                (alpha, beta) so a crot spans all of U(2) on its subspace.
/// pswap        — partial swap: couples the composite basis states
///                (a1, a2) <-> (b1, b2), which differ in both qudits.
///
/// Lists are in program order: the first op is applied first, so the product
/// op_n * ... * op_1 reconstructs the decomposed unitary.
struct RotationOp {
    enum class Kind { Rxy, Rz, Crot, Pswap };

    Kind kind = Kind::Rxy;
    std::size_t l1 = 0, l2 = 0; // subspace levels (rxy/rz/crot)
    double theta = 0.0;
    double phi = 0.0;
    double alpha = 0.0, beta = 0.0; // block phases (crot/pswap)

    // crot only:
    std::size_t control_slot = 0; // 0: first qudit controls, 1: second
    std::size_t control_level = 0;

    // pswap only: the coupled composite basis pairs.
    std::size_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;
};

/// Givens-style nulling of the sub-diagonal, column by column (bottom-up
/// within each column, pivoting on the diagonal). Emits at most d(d-1)/2 rxy
/// eliminators plus a trailing-diagonal rz chain; the ordered product equals
/// `u` up to global phase.
std::vector<RotationOp> decompose_local_qr(const Matrix& u);

/// Rewrites rxy/rz ops so every emitted op acts on a graph edge. Rotations
/// on non-adjacent level pairs are conjugated by pi-rotations along the
/// minimum-cost path (edge cost -log fidelity); rz ops telescope along the
/// path. The total unitary is unchanged.
std::vector<RotationOp> route_physical(std::span<const RotationOp> ops,
                                       const EnergyLevelGraph& graph);

/// Two-level decomposition on the composite space of a two-qudit unitary.
/// Each eliminator coupling (a1,a2) <-> (b1,b2) becomes a crot when the
/// states share a digit and a pswap otherwise; the trailing 2x2 block is
/// absorbed into the last eliminator, so the ordered product reconstructs
/// `u` exactly.
std::vector<RotationOp> decompose_entangling_qr(const Matrix& u,
                                                std::size_t d1, std::size_t d2);

/// GateSpec form of a local op acting on `line`.
GateSpec local_op_gate(const RotationOp& op, std::size_t line);

/// GateSpec form of a crot/pswap acting on the ordered line pair.
GateSpec entangling_op_gate(const RotationOp& op, std::size_t line1,
                            std::size_t line2);

/// Mixed-radix rotation-tree state preparation: emits local cascades on each
/// qudit controlled on every earlier qudit's digit string. Branches carrying
/// probability mass below epsilon/B (B = number of branches) are pruned; the
/// prepared state has fidelity >= 1 - epsilon to the target.
Circuit prepare_state(const sim::StateVector& target, double epsilon);

enum class Pass { LogLocQR, PhyLocQR, LogEntQR, PhyEntQR, StatePrep };

std::optional<Pass> pass_from_name(std::string_view name);
std::string_view pass_name(Pass pass);

/// Applies the passes in order. Loc passes rewrite single-qudit gates into
/// two-level rotations (Phy additionally routes them on the device's level
/// graphs); Ent passes rewrite two-qudit gates (a single control counts as
/// an operand) into crot/pswap sequences. Measurements pass through
/// verbatim. Rejects gates touching more than two qudits.
Circuit compile(const Circuit& circuit, std::span<const Pass> passes,
                const Device* device = nullptr);

struct CompileReport {
    std::map<std::string, std::size_t> gate_counts_before;
    std::map<std::string, std::size_t> gate_counts_after;
    std::size_t gates_before = 0;
    std::size_t gates_after = 0;
    std::size_t entangling_before = 0;
    std::size_t entangling_after = 0;
    /// sum of log(edge fidelity) over emitted physical ops (rxy via level
    /// edges, crot/pswap via couplings; rz is virtual). 0 without a device.
    double expected_log_fidelity = 0.0;
};

CompileReport compile_report(const Circuit& before, const Circuit& after,
                             const Device* device = nullptr);

} // namespace ditkit::compiler

#endif
