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

#include "ditkit/device.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ditkit {

bool EnergyLevelGraph::has_edge(std::size_t a, std::size_t b) const {
    for (const LevelEdge& e : edges) {
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) {
            return true;
        }
    }
    return false;
}

double EnergyLevelGraph::edge_fidelity(std::size_t a, std::size_t b) const {
    for (const LevelEdge& e : edges) {
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) {
            return e.fidelity;
        }
    }
    return 0.0;
}

EnergyLevelGraph EnergyLevelGraph::restricted(std::size_t dim) const {
    EnergyLevelGraph out;
    out.dimension = dim;
    for (const LevelEdge& e : edges) {
        if (e.a < dim && e.b < dim) {
            out.edges.push_back(e);
        }
    }
    return out;
}

bool EnergyLevelGraph::is_connected() const {
    if (dimension == 0) {
        return false;
    }
    std::vector<bool> seen(dimension, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (const LevelEdge& e : edges) {
            const std::size_t other = (e.a == v) ? e.b : (e.b == v) ? e.a : v;
            if (other != v && !seen[other]) {
                seen[other] = true;
                ++visited;
                stack.push_back(other);
            }
        }
    }
    return visited == dimension;
}

bool Device::is_native(std::string_view gate) const {
    return std::find(native_gates.begin(), native_gates.end(), gate) !=
           native_gates.end();
}

bool Device::coupled(std::size_t a, std::size_t b) const {
    return coupling_fidelity(a, b) > 0.0;
}

double Device::coupling_fidelity(std::size_t a, std::size_t b) const {
    for (const Coupling& c : couplings) {
        if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) {
            return c.fidelity;
        }
    }
    return 0.0;
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw std::invalid_argument("device file: " + what);
}

void check_fidelity(double f) {
    if (!(f > 0.0 && f <= 1.0)) {
        schema_error("fidelity " + std::to_string(f) + " outside (0, 1]");
    }
}

} // namespace

Device parse_device(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        schema_error(e.what());
    }
    if (!doc.is_object()) {
        schema_error("expected a JSON object");
    }
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1) {
        schema_error("missing or unsupported schema_version (expected 1)");
    }
    Device device;
    device.name = doc.value("name", std::string("unnamed"));
    if (!doc.contains("qudits") || !doc["qudits"].is_array() ||
        doc["qudits"].empty()) {
        schema_error("missing qudits array");
    }
    for (const auto& q : doc["qudits"]) {
        if (!q.contains("dim")) {
            schema_error("qudit entry without dim");
        }
        const auto dim = q["dim"].get<std::size_t>();
        if (dim < 2) {
            schema_error("qudit dimension must be >= 2");
        }
        EnergyLevelGraph graph;
        graph.dimension = dim;
        if (!q.contains("level_edges") || !q["level_edges"].is_array()) {
            schema_error("qudit entry without level_edges");
        }
        for (const auto& e : q["level_edges"]) {
            if (!e.is_array() || e.size() != 3) {
                schema_error("level edge must be [i, j, fidelity]");
            }
            LevelEdge edge{e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                           e[2].get<double>()};
            if (edge.a >= dim || edge.b >= dim) {
                schema_error("level edge (" + std::to_string(edge.a) + ", " +
                             std::to_string(edge.b) + ") exceeds dimension " +
                             std::to_string(dim));
            }
            if (edge.a == edge.b) {
                schema_error("level edge endpoints must differ");
            }
            check_fidelity(edge.fidelity);
            graph.edges.push_back(edge);
        }
        if (!graph.is_connected()) {
            schema_error("level graph of a dim-" + std::to_string(dim) +
                         " qudit is disconnected");
        }
        device.dims.push_back(dim);
        device.level_graphs.push_back(std::move(graph));
    }
    if (doc.contains("couplings")) {
        for (const auto& c : doc["couplings"]) {
            if (!c.is_array() || c.size() != 3) {
                schema_error("coupling must be [a, b, fidelity]");
            }
            Coupling coupling{c[0].get<std::size_t>(), c[1].get<std::size_t>(),
                              c[2].get<double>()};
            if (coupling.a >= device.dims.size() || coupling.b >= device.dims.size() ||
                coupling.a == coupling.b) {
                schema_error("coupling references invalid qudits");
            }
            check_fidelity(coupling.fidelity);
            device.couplings.push_back(coupling);
        }
    }
    if (doc.contains("native_gates")) {
        for (const auto& g : doc["native_gates"]) {
            device.native_gates.push_back(g.get<std::string>());
        }
    }
    if (doc.contains("noise")) {
        device.default_noise = noise::parse_noise_model(doc["noise"].dump());
    }
    return device;
}

Device load_device(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open device file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_device(buffer.str());
}

std::string save_device(const Device& device) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["name"] = device.name;
    doc["qudits"] = nlohmann::json::array();
    for (std::size_t i = 0; i < device.dims.size(); ++i) {
        nlohmann::json q;
        q["dim"] = device.dims[i];
        q["level_edges"] = nlohmann::json::array();
        for (const LevelEdge& e : device.level_graphs[i].edges) {
            q["level_edges"].push_back({e.a, e.b, e.fidelity});
        }
        doc["qudits"].push_back(std::move(q));
    }
    doc["couplings"] = nlohmann::json::array();
    for (const Coupling& c : device.couplings) {
        doc["couplings"].push_back({c.a, c.b, c.fidelity});
    }
    doc["native_gates"] = device.native_gates;
    if (device.default_noise) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [gate, gate_noise] : device.default_noise->entries()) {
            nlohmann::json entry;
            entry["gate"] = gate;
            entry["prob_x"] = gate_noise.noise.prob_x;
            entry["prob_z"] = gate_noise.noise.prob_z;
            entry["policy"] = gate_noise.policy == noise::Policy::Target ? "target"
                              : gate_noise.policy == noise::Policy::Controls
                                  ? "controls"
                                  : "all";
            entries.push_back(std::move(entry));
        }
        doc["noise"] = {{"entries", std::move(entries)}};
    }
    return doc.dump(2) + "\n";
}

std::vector<Violation> validate_circuit(const Circuit& circuit,
                                        const Device& device) {
    std::vector<Violation> violations;
    if (circuit.num_lines() > device.dims.size()) {
        violations.push_back(
            {"layout",
             "circuit uses " + std::to_string(circuit.num_lines()) +
                 " qudits but the device has " + std::to_string(device.dims.size()),
             0});
        return violations;
    }
    for (std::size_t line = 0; line < circuit.num_lines(); ++line) {
        if (circuit.dims()[line] > device.dims[line]) {
            violations.push_back(
                {"dimension",
                 "line " + std::to_string(line) + " needs dimension " +
                     std::to_string(circuit.dims()[line]) + " but device qudit " +
                     std::to_string(line) + " has " +
                     std::to_string(device.dims[line]),
                 0});
        }
    }

    const auto& instructions = circuit.instructions();
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        if (!instructions[i].is_gate()) {
            continue;
        }
        const GateSpec& gate = instructions[i].gate();
        if (!device.is_native(gate.name)) {
            violations.push_back(
                {"native", "gate '" + gate.name + "' is not native to device '" +
                               device.name + "'",
                 i});
        }
        const auto touched = gate.touched_lines();
        if (touched.size() == 2 && !device.coupled(touched[0], touched[1])) {
            violations.push_back(
                {"coupling",
                 "qudits " + std::to_string(touched[0]) + " and " +
                     std::to_string(touched[1]) + " are not coupled",
                 i});
        }
        if (touched.size() > 2) {
            violations.push_back(
                {"coupling",
                 "gate '" + gate.name + "' touches more than two qudits", i});
        }
        if (gate.name == "rxy") {
            const auto l1 = static_cast<std::size_t>(gate.params[0]);
            const auto l2 = static_cast<std::size_t>(gate.params[1]);
            if (!device.level_graphs[gate.lines[0]].has_edge(l1, l2)) {
                violations.push_back(
                    {"level-edge",
                     "rotation on levels (" + std::to_string(l1) + ", " +
                         std::to_string(l2) + ") of qudit " +
                         std::to_string(gate.lines[0]) +
                         " is not a drivable edge",
                     i});
            }
        }
    }
    return violations;
}

} // namespace ditkit
