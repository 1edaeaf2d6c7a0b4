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

#ifndef DITKIT_DEVICE_HPP
#define DITKIT_DEVICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ditkit/core.hpp"
#include "ditkit/noise.hpp"

namespace ditkit {

struct LevelEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    double fidelity = 1.0;
};

/// Physically drivable level pairs of one qudit, with per-edge rotation
/// quality. Undirected; must be connected.
struct EnergyLevelGraph {
    std::size_t dimension = 0;
    std::vector<LevelEdge> edges;

    bool has_edge(std::size_t a, std::size_t b) const;
    double edge_fidelity(std::size_t a, std::size_t b) const; // 0 if absent

    /// Induced subgraph on levels < dim (for circuits narrower than the
    /// hardware qudit).
    EnergyLevelGraph restricted(std::size_t dim) const;

    bool is_connected() const;
};

struct Coupling {
    std::size_t a = 0;
    std::size_t b = 0;
    double fidelity = 1.0;
};

/// Declarative "fake" backend description.
struct Device {
    std::string name;
    std::vector<std::size_t> dims;
    std::vector<EnergyLevelGraph> level_graphs; // one per qudit
    std::vector<Coupling> couplings;
    std::vector<std::string> native_gates;
    std::optional<noise::NoiseModel> default_noise;

    bool is_native(std::string_view gate) const;
    bool coupled(std::size_t a, std::size_t b) const;
    double coupling_fidelity(std::size_t a, std::size_t b) const; // 0 if absent
};

/// Device file schema (JSON, schema_version 1):
///   {"schema_version": 1, "name": "...",
///    "qudits": [{"dim": 6, "level_edges": [[0, 1, 0.999], ...]}, ...],
///    "couplings": [[0, 1, 0.99], ...],
///    "native_gates": ["rxy", ...],
///    "noise": {"entries": [...]}}          // optional
Device parse_device(const std::string& json_text);
Device load_device(const std::string& path);
std::string save_device(const Device& device);

struct Violation {
    std::string kind; // "dimension" | "coupling" | "native" | "level-edge" | "layout"
    std::string message;
    std::size_t instruction_index = 0; // meaningful for per-gate violations
};

/// Checks a circuit against a device line-for-line (circuit line i runs on
/// device qudit i). An empty result means the circuit is executable.
/// The level-edge check applies to rxy gates, whose (l1, l2) pair must be a
/// drivable edge; rz phases are treated as virtual and crot/pswap are
/// governed by the native-gate and coupling checks.
std::vector<Violation> validate_circuit(const Circuit& circuit,
                                        const Device& device);

} // namespace ditkit

#endif
