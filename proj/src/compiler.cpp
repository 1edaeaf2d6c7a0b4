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

#include "ditkit/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "ditkit/gates.hpp"

namespace ditkit::compiler {

namespace {

using std::numbers::pi;

constexpr double kNullTol = 1e-14;

double arg_of(const Complex& z) { return std::atan2(z.imag(), z.real()); }

/// Left-multiplies rows (r1, r2) of w by a 2x2 block.
void rotate_rows(Matrix& w, std::size_t r1, std::size_t r2, const Matrix& block) {
    for (std::size_t col = 0; col < w.cols(); ++col) {
        const Complex a = w(r1, col);
        const Complex b = w(r2, col);
        w(r1, col) = block(0, 0) * a + block(0, 1) * b;
        w(r2, col) = block(1, 0) * a + block(1, 1) * b;
    }
}

void require_unitary(const Matrix& u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw std::invalid_argument("decomposition input must be square");
    }
    if (!u.is_unitary(1e-10)) {
        throw std::invalid_argument("decomposition input is not unitary within 1e-10");
    }
}

/// rxy angles that null v against pivot u (the rotated pivot keeps u's
/// phase and becomes sqrt(|u|^2 + |v|^2) in magnitude).
std::pair<double, double> nulling_angles(const Complex& u, const Complex& v) {
    if (std::abs(u) < kNullTol) {
        return {pi, arg_of(v) - pi / 2.0};
    }
    return {2.0 * std::atan2(std::abs(v), std::abs(u)),
            arg_of(v) - arg_of(u) - pi / 2.0};
}

RotationOp rxy_op(std::size_t l1, std::size_t l2, double theta, double phi) {
    RotationOp op;
    op.kind = RotationOp::Kind::Rxy;
    op.l1 = l1;
    op.l2 = l2;
    op.theta = theta;
    op.phi = phi;
    return op;
}

RotationOp rz_op(std::size_t l1, std::size_t l2, double theta) {
    RotationOp op;
    op.kind = RotationOp::Kind::Rz;
    op.l1 = l1;
    op.l2 = l2;
    op.theta = theta;
    return op;
}

/// Orientation helpers: a two-level op on the ordered pair (x, y) is stored
/// with l1 < l2; flipping the pair negates phi (rxy) / theta (rz).
void push_rxy_oriented(std::vector<RotationOp>& out, std::size_t x, std::size_t y,
                       double theta, double phi) {
    if (x < y) {
        out.push_back(rxy_op(x, y, theta, phi));
    } else {
        out.push_back(rxy_op(y, x, theta, -phi));
    }
}

void push_rz_oriented(std::vector<RotationOp>& out, std::size_t x, std::size_t y,
                      double theta) {
    if (x < y) {
        out.push_back(rz_op(x, y, theta));
    } else {
        out.push_back(rz_op(y, x, -theta));
    }
}

} // namespace

std::vector<RotationOp> decompose_local_qr(const Matrix& u) {
    require_unitary(u);
    const std::size_t d = u.rows();
    Matrix w = u;

    // Null the sub-diagonal column by column, bottom-up, pivoting on the
    // diagonal entry: each eliminator acts on levels (c, r).
    struct Elimination {
        std::size_t c, r;
        double theta, phi;
    };
    std::vector<Elimination> eliminations;
    for (std::size_t c = 0; c + 1 < d; ++c) {
        for (std::size_t r = d; r-- > c + 1;) {
            if (std::abs(w(r, c)) < kNullTol) {
                continue;
            }
            const auto [theta, phi] = nulling_angles(w(c, c), w(r, c));
            rotate_rows(w, c, r, rotation_block(theta, phi));
            w(r, c) = 0.0;
            eliminations.push_back({c, r, theta, phi});
        }
    }

    std::vector<RotationOp> ops;

    // Residual diagonal as an rz chain on adjacent level pairs; exact up to
    // the global phase gamma = -sum(delta)/d.
    std::vector<double> delta(d);
    double total = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        delta[j] = arg_of(w(j, j));
        total += delta[j];
    }
    const double gamma = -total / static_cast<double>(d);
    double t = -2.0 * (delta[0] + gamma);
    for (std::size_t j = 1; j < d; ++j) {
        if (std::abs(t) > 1e-12) {
            ops.push_back(rz_op(j - 1, j, t));
        }
        if (j + 1 < d) {
            t -= 2.0 * (delta[j] + gamma);
        }
    }

    // Inverted eliminators in reverse order reconstruct u on top of the
    // diagonal (rxy(theta, phi)^dagger = rxy(-theta, phi)).
    for (auto it = eliminations.rbegin(); it != eliminations.rend(); ++it) {
        ops.push_back(rxy_op(it->c, it->r, -it->theta, it->phi));
    }
    return ops;
}

namespace {

std::vector<std::size_t> shortest_path(const EnergyLevelGraph& graph,
                                       std::size_t from, std::size_t to) {
    const std::size_t n = graph.dimension;
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const LevelEdge& e : graph.edges) {
        const double cost = -std::log(e.fidelity);
        adj[e.a].emplace_back(e.b, cost);
        adj[e.b].emplace_back(e.a, cost);
    }
    for (auto& neighbors : adj) {
        std::sort(neighbors.begin(), neighbors.end());
    }
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> pred(n, n);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[from] = 0.0;
    queue.push({0.0, from});
    while (!queue.empty()) {
        const auto [cost, v] = queue.top();
        queue.pop();
        if (cost > dist[v]) {
            continue;
        }
        for (const auto& [next, edge_cost] : adj[v]) {
            if (dist[v] + edge_cost < dist[next]) {
                dist[next] = dist[v] + edge_cost;
                pred[next] = v;
                queue.push({dist[next], next});
            }
        }
    }
    if (dist[to] == std::numeric_limits<double>::infinity()) {
        throw std::domain_error("level graph does not connect levels " +
                                std::to_string(from) + " and " + std::to_string(to));
    }
    std::vector<std::size_t> path;
    for (std::size_t v = to; v != from; v = pred[v]) {
        path.push_back(v);
    }
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::vector<RotationOp> route_physical(std::span<const RotationOp> ops,
                                       const EnergyLevelGraph& graph) {
    if (!graph.is_connected()) {
        throw std::domain_error("energy level graph is disconnected");
    }
    std::vector<RotationOp> out;
    for (const RotationOp& op : ops) {
        if (op.kind != RotationOp::Kind::Rxy && op.kind != RotationOp::Kind::Rz) {
            out.push_back(op);
            continue;
        }
        if (op.l1 >= graph.dimension || op.l2 >= graph.dimension) {
            throw std::domain_error("rotation level out of range for this graph");
        }
        if (graph.has_edge(op.l1, op.l2)) {
            out.push_back(op);
            continue;
        }
        const auto path = shortest_path(graph, op.l1, op.l2);
        const std::size_t hops = path.size() - 1;
        if (op.kind == RotationOp::Kind::Rz) {
            // Adjacent rz ops telescope: intermediate phases cancel exactly.
            for (std::size_t k = 1; k < path.size(); ++k) {
                push_rz_oriented(out, path[k - 1], path[k], op.theta);
            }
            continue;
        }
        // Conjugate by pi-rotations that walk l1 next to l2:
        //   R_(x,y)(t, p) = S^dag R_(c,y)(t, p + pi/2) S,  S = rxy(x, c, pi, 0).
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            push_rxy_oriented(out, path[k - 1], path[k], pi, 0.0);
        }
        push_rxy_oriented(out, path[hops - 1], path[hops], op.theta,
                          op.phi + static_cast<double>(hops - 1) * pi / 2.0);
        for (std::size_t k = path.size() - 1; k-- > 1;) {
            push_rxy_oriented(out, path[k - 1], path[k], pi, pi);
        }
    }
    return out;
}

namespace {

/// Angles (theta, phi, alpha, beta) reproducing an arbitrary 2x2 unitary as
/// diag(e^{i alpha}, e^{i beta}) * rotation_block(theta, phi).
RotationOp from_block(const Matrix& m) {
    RotationOp op;
    const double c = std::abs(m(0, 0));
    const double s = std::abs(m(0, 1));
    op.theta = 2.0 * std::atan2(s, c);
    if (s < kNullTol) {
        op.phi = 0.0;
        op.alpha = arg_of(m(0, 0));
        op.beta = arg_of(m(1, 1));
    } else if (c < kNullTol) {
        op.phi = 0.0;
        op.alpha = arg_of(m(0, 1)) + pi / 2.0;
        op.beta = arg_of(m(1, 0)) + pi / 2.0;
    } else {
        op.alpha = arg_of(m(0, 0));
        op.phi = op.alpha - arg_of(m(0, 1)) - pi / 2.0;
        op.beta = arg_of(m(1, 1));
    }
    return op;
}

RotationOp classify_two_level(std::size_t p, std::size_t q, const Matrix& block,
                              std::size_t d2) {
    RotationOp op = from_block(block);
    const std::size_t a1 = p / d2;
    const std::size_t a2 = p % d2;
    const std::size_t b1 = q / d2;
    const std::size_t b2 = q % d2;
    if (a1 == b1) {
        op.kind = RotationOp::Kind::Crot;
        op.control_slot = 0;
        op.control_level = a1;
        op.l1 = a2;
        op.l2 = b2;
    } else if (a2 == b2) {
        op.kind = RotationOp::Kind::Crot;
        op.control_slot = 1;
        op.control_level = a2;
        op.l1 = a1;
        op.l2 = b1;
    } else {
        op.kind = RotationOp::Kind::Pswap;
        op.a1 = a1;
        op.a2 = a2;
        op.b1 = b1;
        op.b2 = b2;
    }
    return op;
}

bool block_is_identity(const Matrix& m) {
    return std::abs(m(0, 0) - 1.0) < kNullTol && std::abs(m(1, 1) - 1.0) < kNullTol &&
           std::abs(m(0, 1)) < kNullTol && std::abs(m(1, 0)) < kNullTol;
}

} // namespace

std::vector<RotationOp> decompose_entangling_qr(const Matrix& u, std::size_t d1,
                                                std::size_t d2) {
    require_unitary(u);
    if (u.rows() != d1 * d2) {
        throw std::invalid_argument("matrix size does not match the dimensions");
    }
    const std::size_t n = d1 * d2;
    Matrix w = u;

    // Full-U(2) eliminators leave the pivot real positive, so after all
    // columns up to n-3 the matrix is identity except for a final 2x2 block,
    // which becomes the last emitted op; no residual phases remain.
    struct Elimination {
        std::size_t p, q;
        Matrix block;
    };
    std::vector<Elimination> eliminations;
    for (std::size_t c = 0; c + 2 < n; ++c) {
        for (std::size_t r = n; r-- > c + 1;) {
            const Complex uu = w(c, c);
            const Complex vv = w(r, c);
            if (std::abs(vv) < kNullTol) {
                continue;
            }
            const double norm = std::sqrt(std::norm(uu) + std::norm(vv));
            Matrix block(2, 2);
            block(0, 0) = std::conj(uu) / norm;
            block(0, 1) = std::conj(vv) / norm;
            block(1, 0) = -vv / norm;
            block(1, 1) = uu / norm;
            rotate_rows(w, c, r, block);
            w(r, c) = 0.0;
            eliminations.push_back({c, r, std::move(block)});
        }
    }

    std::vector<RotationOp> ops;
    Matrix tail(2, 2);
    tail(0, 0) = w(n - 2, n - 2);
    tail(0, 1) = w(n - 2, n - 1);
    tail(1, 0) = w(n - 1, n - 2);
    tail(1, 1) = w(n - 1, n - 1);
    if (!block_is_identity(tail)) {
        ops.push_back(classify_two_level(n - 2, n - 1, tail, d2));
    }
    for (auto it = eliminations.rbegin(); it != eliminations.rend(); ++it) {
        ops.push_back(classify_two_level(it->p, it->q, it->block.adjoint(), d2));
    }
    return ops;
}

GateSpec local_op_gate(const RotationOp& op, std::size_t line) {
    GateSpec gate;
    gate.lines = {line};
    if (op.kind == RotationOp::Kind::Rxy) {
        gate.name = "rxy";
        gate.params = {static_cast<double>(op.l1), static_cast<double>(op.l2),
                       op.theta, op.phi};
    } else if (op.kind == RotationOp::Kind::Rz) {
        gate.name = "rz";
        gate.params = {static_cast<double>(op.l1), static_cast<double>(op.l2),
                       op.theta};
    } else {
        throw std::invalid_argument("not a local rotation op");
    }
    return gate;
}

GateSpec entangling_op_gate(const RotationOp& op, std::size_t line1,
                            std::size_t line2) {
    GateSpec gate;
    if (op.kind == RotationOp::Kind::Crot) {
        const std::size_t control = op.control_slot == 0 ? line1 : line2;
        const std::size_t target = op.control_slot == 0 ? line2 : line1;
        gate.name = "crot";
        gate.params = {static_cast<double>(op.l1), static_cast<double>(op.l2),
                       op.theta,  op.phi,
                       op.alpha,  op.beta};
        gate.lines = {target};
        gate.control = ControlSpec{{{control, op.control_level}}};
    } else if (op.kind == RotationOp::Kind::Pswap) {
        gate.name = "pswap";
        gate.params = {static_cast<double>(op.a1), static_cast<double>(op.a2),
                       static_cast<double>(op.b1), static_cast<double>(op.b2),
                       op.theta,  op.phi,  op.alpha,  op.beta};
        gate.lines = {line1, line2};
    } else {
        throw std::invalid_argument("not an entangling op");
    }
    return gate;
}

namespace {

struct PrefixTree {
    std::vector<std::size_t> dims;
    std::vector<Complex> amps; // pruned + renormalized target

    double block_mass(std::size_t offset, std::size_t size) const {
        double mass = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            mass += std::norm(amps[offset + i]);
        }
        return mass;
    }
};

/// Local cascade mapping |0> to the unit vector w, as gates on `line`
/// controlled on the digits of `prefix`.
void emit_cascade(Circuit& circuit, std::size_t line,
                  const std::vector<std::size_t>& prefix,
                  std::vector<Complex> w) {
    const std::size_t d = w.size();
    struct Step {
        std::size_t level;
        double theta, phi;
    };
    std::vector<Step> steps;
    for (std::size_t a = d; a-- > 1;) {
        if (std::abs(w[a]) < kNullTol) {
            continue;
        }
        const auto [theta, phi] = nulling_angles(w[0], w[a]);
        const Matrix block = rotation_block(theta, phi);
        const Complex w0 = w[0];
        w[0] = block(0, 0) * w0 + block(0, 1) * w[a];
        w[a] = 0.0;
        steps.push_back({a, theta, phi});
    }
    const double delta = std::abs(w[0]) > kNullTol ? arg_of(w[0]) : 0.0;

    ControlSpec control;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        control.controls.emplace_back(i, prefix[i]);
    }
    const auto controlled = [&](GateSpec gate) {
        if (!control.controls.empty()) {
            gate.control = control;
        }
        circuit.add_gate(std::move(gate));
    };

    if (std::abs(delta) > 1e-12) {
        controlled(local_op_gate(rz_op(0, 1, -2.0 * delta), line));
    }
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        controlled(local_op_gate(rxy_op(0, it->level, -it->theta, it->phi), line));
    }
}

} // namespace

Circuit prepare_state(const sim::StateVector& target, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    }
    if (std::abs(target.norm_squared() - 1.0) > 1e-8) {
        throw std::invalid_argument("prepare_state: target is not normalized");
    }
    const std::size_t n = target.dims.size();
    PrefixTree tree{target.dims, target.amps};

    // Suffix sizes: prefix of length k covers blocks of size suffix[k].
    std::vector<std::size_t> suffix(n + 1, 1);
    for (std::size_t k = n; k-- > 0;) {
        suffix[k] = suffix[k + 1] * target.dims[k];
    }

    if (epsilon > 0.0) {
        // Branch count before pruning, across all levels.
        std::size_t branches = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t blocks = suffix[0] / suffix[k];
            for (std::size_t b = 0; b < blocks; ++b) {
                if (tree.block_mass(b * suffix[k], suffix[k]) > 0.0) {
                    ++branches;
                }
            }
        }
        const double cutoff = epsilon / static_cast<double>(std::max<std::size_t>(branches, 1));
        // Top-down pruning; total removed mass stays below epsilon.
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t blocks = suffix[0] / suffix[k];
            for (std::size_t b = 0; b < blocks; ++b) {
                const double mass = tree.block_mass(b * suffix[k], suffix[k]);
                if (mass > 0.0 && mass < cutoff) {
                    std::fill_n(tree.amps.begin() + static_cast<std::ptrdiff_t>(b * suffix[k]),
                                suffix[k], Complex(0.0));
                }
            }
        }
        const double kept = tree.block_mass(0, tree.amps.size());
        if (kept <= 0.0) {
            throw std::domain_error("pruning removed the whole state; epsilon too large");
        }
        const double scale = 1.0 / std::sqrt(kept);
        for (Complex& a : tree.amps) {
            a *= scale;
        }
    }

    Circuit circuit;
    circuit.add_quantum_register({"q", target.dims});

    // Exact synthesis of the (possibly pruned) vector, qudit by qudit.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t blocks = suffix[0] / suffix[k];
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t offset = b * suffix[k];
            const double mass = tree.block_mass(offset, suffix[k]);
            if (mass <= 0.0) {
                continue;
            }
            const double f_parent = std::sqrt(mass);
            std::vector<Complex> w(target.dims[k]);
            for (std::size_t a = 0; a < target.dims[k]; ++a) {
                const std::size_t child = offset + a * suffix[k + 1];
                if (k + 1 == n) {
                    w[a] = tree.amps[child] / f_parent;
                } else {
                    w[a] = std::sqrt(tree.block_mass(child, suffix[k + 1])) / f_parent;
                }
            }
            std::vector<std::size_t> prefix(k);
            std::size_t rem = b;
            for (std::size_t i = k; i-- > 0;) {
                prefix[i] = rem % target.dims[i];
                rem /= target.dims[i];
            }
            emit_cascade(circuit, k, prefix, std::move(w));
        }
    }
    return circuit;
}

std::optional<Pass> pass_from_name(std::string_view name) {
    if (name == "LogLocQRPass") {
        return Pass::LogLocQR;
    }
    if (name == "PhyLocQRPass") {
        return Pass::PhyLocQR;
    }
    if (name == "LogEntQRPass") {
        return Pass::LogEntQR;
    }
    if (name == "PhyEntQRPass") {
        return Pass::PhyEntQR;
    }
    if (name == "StatePrepPass") {
        return Pass::StatePrep;
    }
    return std::nullopt;
}

std::string_view pass_name(Pass pass) {
    switch (pass) {
    case Pass::LogLocQR:
        return "LogLocQRPass";
    case Pass::PhyLocQR:
        return "PhyLocQRPass";
    case Pass::LogEntQR:
        return "LogEntQRPass";
    case Pass::PhyEntQR:
        return "PhyEntQRPass";
    case Pass::StatePrep:
        return "StatePrepPass";
    }
    return "";
}

namespace {

Circuit fresh_like(const Circuit& in) {
    Circuit out = in.layout_clone();
    if (in.initial_state()) {
        out.set_initial_state(*in.initial_state());
    }
    return out;
}

Circuit run_loc_pass(const Circuit& in, const Device* device) {
    Circuit out = fresh_like(in);
    for (const auto& instruction : in.instructions()) {
        if (!instruction.is_gate()) {
            out.add_measurement(instruction.measurement().line,
                                instruction.measurement().cell);
            continue;
        }
        const GateSpec& gate = instruction.gate();
        if (gate.touched_lines().size() != 1) {
            out.add_gate(gate);
            continue;
        }
        const std::size_t line = gate.lines[0];
        const std::size_t d = in.dims()[line];

        std::vector<RotationOp> ops;
        if (gate.name == "rxy") {
            ops.push_back(rxy_op(static_cast<std::size_t>(gate.params[0]),
                                 static_cast<std::size_t>(gate.params[1]),
                                 gate.params[2], gate.params[3]));
        } else if (gate.name == "rz") {
            ops.push_back(rz_op(static_cast<std::size_t>(gate.params[0]),
                                static_cast<std::size_t>(gate.params[1]),
                                gate.params[2]));
        } else {
            const std::size_t dims_arr[1] = {d};
            ops = decompose_local_qr(gate_matrix(gate, dims_arr));
        }
        if (device != nullptr) {
            if (line >= device->dims.size() || d > device->dims[line]) {
                throw std::invalid_argument(
                    "circuit does not fit onto device '" + device->name + "'");
            }
            ops = route_physical(ops, device->level_graphs[line].restricted(d));
        } else if (gate.name == "rxy" || gate.name == "rz") {
            out.add_gate(gate); // logical pass: already a two-level rotation
            continue;
        }
        for (const RotationOp& op : ops) {
            out.add_gate(local_op_gate(op, line));
        }
    }
    return out;
}

Circuit run_ent_pass(const Circuit& in) {
    Circuit out = fresh_like(in);
    for (const auto& instruction : in.instructions()) {
        if (!instruction.is_gate()) {
            out.add_measurement(instruction.measurement().line,
                                instruction.measurement().cell);
            continue;
        }
        const GateSpec& gate = instruction.gate();
        const auto touched = gate.touched_lines();
        if (touched.size() != 2 || gate.name == "crot" || gate.name == "pswap") {
            out.add_gate(gate);
            continue;
        }
        const std::size_t qa = std::min(touched[0], touched[1]);
        const std::size_t qb = std::max(touched[0], touched[1]);
        const std::vector<std::size_t> pair_dims{in.dims()[qa], in.dims()[qb]};

        // Re-index the gate onto the two-line subspace (qa -> 0, qb -> 1) and
        // realize its full 2-qudit matrix, controls included.
        GateSpec local = gate;
        for (std::size_t& l : local.lines) {
            l = (l == qa) ? 0 : 1;
        }
        if (local.control) {
            for (auto& [l, level] : local.control->controls) {
                l = (l == qa) ? 0 : 1;
            }
        }
        const Matrix u = embedded_gate_matrix(local, pair_dims);
        const auto ops = decompose_entangling_qr(u, pair_dims[0], pair_dims[1]);
        for (const RotationOp& op : ops) {
            out.add_gate(entangling_op_gate(op, qa, qb));
        }
    }
    return out;
}

Circuit run_state_prep(const Circuit& in) {
    if (!in.initial_state()) {
        return in;
    }
    sim::StateVector target;
    target.dims = in.dims();
    target.amps = *in.initial_state();
    const Circuit prep = prepare_state(target, 0.0);

    Circuit out = in.layout_clone();
    for (const auto& instruction : prep.instructions()) {
        out.add_gate(instruction.gate());
    }
    for (const auto& instruction : in.instructions()) {
        if (instruction.is_gate()) {
            out.add_gate(instruction.gate());
        } else {
            out.add_measurement(instruction.measurement().line,
                                instruction.measurement().cell);
        }
    }
    return out;
}

} // namespace

Circuit compile(const Circuit& circuit, std::span<const Pass> passes,
                const Device* device) {
    for (const auto& instruction : circuit.instructions()) {
        if (instruction.is_gate()) {
            const auto touched = instruction.gate().touched_lines();
            if (touched.size() > 2) {
                throw std::invalid_argument(
                    "multi-qudit gate compilation is not supported yet: gate '" +
                    instruction.gate().name + "' touches " +
                    std::to_string(touched.size()) + " qudits");
            }
        }
    }
    Circuit out = circuit;
    for (const Pass pass : passes) {
        const bool physical = pass == Pass::PhyLocQR || pass == Pass::PhyEntQR;
        if (physical && device == nullptr) {
            throw std::invalid_argument(std::string(pass_name(pass)) +
                                        " requires a device");
        }
        switch (pass) {
        case Pass::LogLocQR:
            out = run_loc_pass(out, nullptr);
            break;
        case Pass::PhyLocQR:
            out = run_loc_pass(out, device);
            break;
        case Pass::LogEntQR:
        case Pass::PhyEntQR:
            out = run_ent_pass(out);
            break;
        case Pass::StatePrep:
            out = run_state_prep(out);
            break;
        }
    }
    return out;
}

CompileReport compile_report(const Circuit& before, const Circuit& after,
                             const Device* device) {
    CompileReport report;
    const CircuitStats sb = circuit_stats(before);
    const CircuitStats sa = circuit_stats(after);
    report.gate_counts_before = sb.gate_counts;
    report.gate_counts_after = sa.gate_counts;
    report.gates_before = sb.gates;
    report.gates_after = sa.gates;
    report.entangling_before = sb.entangling_gates;
    report.entangling_after = sa.entangling_gates;

    if (device == nullptr) {
        return report;
    }
    for (const auto& instruction : after.instructions()) {
        if (!instruction.is_gate()) {
            continue;
        }
        const GateSpec& gate = instruction.gate();
        if (gate.name == "rxy") {
            const std::size_t line = gate.lines[0];
            if (line < device->level_graphs.size()) {
                const double f = device->level_graphs[line].edge_fidelity(
                    static_cast<std::size_t>(gate.params[0]),
                    static_cast<std::size_t>(gate.params[1]));
                if (f > 0.0) {
                    report.expected_log_fidelity += std::log(f);
                }
            }
        } else if (gate.name == "crot" || gate.name == "pswap") {
            const auto touched = gate.touched_lines();
            if (touched.size() == 2) {
                const double f = device->coupling_fidelity(touched[0], touched[1]);
                if (f > 0.0) {
                    report.expected_log_fidelity += std::log(f);
                }
            }
        }
    }
    return report;
}

} // namespace ditkit::compiler
