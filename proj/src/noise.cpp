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

#include "ditkit/noise.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ditkit/dd.hpp"
#include "ditkit/gates.hpp"

namespace ditkit::noise {

namespace {

using std::numbers::pi;

bool known_gate(const std::string& name) {
    const auto names = supported_gate_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

/// Operand qudits a gate's errors may land on, per policy. For csum the
/// first operand acts as the control; ControlSpec lines always count as
/// controls.
std::vector<std::size_t> affected_lines(const GateSpec& gate, Policy policy) {
    std::vector<std::size_t> targets = gate.lines;
    std::vector<std::size_t> controls;
    if (gate.name == "csum") {
        controls = {gate.lines[0]};
        targets = {gate.lines[1]};
    }
    if (gate.control) {
        for (const auto& [line, level] : gate.control->controls) {
            controls.push_back(line);
        }
    }
    switch (policy) {
    case Policy::Target:
        return targets;
    case Policy::Controls:
        return controls;
    case Policy::All:
        targets.insert(targets.end(), controls.begin(), controls.end());
        return targets;
    }
    return targets;
}

/// Level pair of the subspace a gate drives on `line`, when it has one.
std::optional<std::pair<std::size_t, std::size_t>>
subspace_levels(const GateSpec& gate, std::size_t line) {
    const auto level_pair = [](double a, double b) {
        auto l1 = static_cast<std::size_t>(a);
        auto l2 = static_cast<std::size_t>(b);
        if (l1 > l2) {
            std::swap(l1, l2);
        }
        return std::make_pair(l1, l2);
    };
    if ((gate.name == "rxy" || gate.name == "rz") && gate.lines[0] == line) {
        return level_pair(gate.params[0], gate.params[1]);
    }
    if (gate.name == "crot" && gate.lines[0] == line) {
        return level_pair(gate.params[0], gate.params[1]);
    }
    if (gate.name == "pswap") {
        if (gate.lines[0] == line) {
            return level_pair(gate.params[0], gate.params[2]);
        }
        if (gate.lines[1] == line) {
            return level_pair(gate.params[1], gate.params[3]);
        }
    }
    return std::nullopt;
}

GateSpec error_gate(const ErrorEvent& event) {
    GateSpec gate;
    gate.lines = {event.line};
    if (event.levels) {
        const auto [l1, l2] = *event.levels;
        if (event.is_x) {
            gate.name = "rxy";
            gate.params = {static_cast<double>(l1), static_cast<double>(l2), pi,
                           pi / 2.0};
        } else {
            gate.name = "rz";
            gate.params = {static_cast<double>(l1), static_cast<double>(l2), pi};
        }
    } else {
        gate.name = event.is_x ? "x" : "z";
    }
    return gate;
}

std::vector<ErrorEvent> draw_events(const Circuit& circuit,
                                    const NoiseModel& model, sim::ShotRng& rng) {
    std::vector<ErrorEvent> events;
    const auto& instructions = circuit.instructions();
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        if (!instructions[i].is_gate()) {
            continue;
        }
        const GateSpec& gate = instructions[i].gate();
        const auto entry = model.entries().find(gate.name);
        if (entry == model.entries().end()) {
            continue;
        }
        const auto& [noise, policy] = entry->second;
        for (const std::size_t line : affected_lines(gate, policy)) {
            // Both coins are always drawn to keep the stream layout fixed.
            const double ux = rng.uniform();
            const double uz = rng.uniform();
            if (ux < noise.prob_x) {
                events.push_back({i, line, true, subspace_levels(gate, line)});
            }
            if (uz < noise.prob_z) {
                events.push_back({i, line, false, subspace_levels(gate, line)});
            }
        }
    }
    return events;
}

} // namespace

void NoiseModel::add_quantum_error_locally(
    const Noise& noise, std::span<const std::string> gate_names, Policy policy) {
    if (noise.prob_x < 0.0 || noise.prob_x > 1.0 || noise.prob_z < 0.0 ||
        noise.prob_z > 1.0) {
        throw std::invalid_argument("error probabilities must lie in [0, 1]");
    }
    for (const std::string& name : gate_names) {
        if (!known_gate(name)) {
            throw std::invalid_argument("unknown gate '" + name +
                                        "' in noise model");
        }
    }
    for (const std::string& name : gate_names) {
        entries_[name] = GateNoise{noise, policy};
    }
}

std::vector<ErrorEvent> shot_trace(const Circuit& circuit,
                                   const NoiseModel& model, std::uint64_t seed,
                                   std::uint64_t shot) {
    sim::ShotRng rng(seed, shot);
    return draw_events(circuit, model, rng);
}

Circuit inject_errors(const Circuit& circuit,
                      std::span<const ErrorEvent> events) {
    Circuit out = circuit.layout_clone();
    if (circuit.initial_state()) {
        out.set_initial_state(*circuit.initial_state());
    }
    const auto& instructions = circuit.instructions();
    std::size_t next_event = 0;
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        if (instructions[i].is_gate()) {
            out.add_gate(instructions[i].gate());
        } else {
            out.add_measurement(instructions[i].measurement().line,
                                instructions[i].measurement().cell);
        }
        while (next_event < events.size() &&
               events[next_event].instruction_index == i) {
            out.add_gate(error_gate(events[next_event]));
            ++next_event;
        }
    }
    return out;
}

namespace {

void run_shots(const Circuit& circuit, const NoiseModel& model,
               std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
               Backend backend, const std::vector<std::size_t>& measured,
               std::map<std::string, std::uint64_t>& counts) {
    std::shared_ptr<dd::Package> package;
    if (backend == Backend::Dd) {
        package = dd::Package::create(circuit.dims());
    }
    for (std::uint64_t shot = begin; shot < end; ++shot) {
        sim::ShotRng rng(seed, shot);
        const auto events = draw_events(circuit, model, rng);
        const Circuit noisy = inject_errors(circuit, events);
        const double u = rng.uniform();

        std::vector<std::size_t> digits;
        if (backend == Backend::Dense) {
            const sim::StateVector state = sim::simulate(noisy);
            digits = index_to_digits(sim::draw_outcome(state, u), state.dims);
        } else {
            dd::State state = circuit.initial_state()
                                  ? package->from_vector([&] {
                                        sim::StateVector init;
                                        init.dims = circuit.dims();
                                        init.amps = *circuit.initial_state();
                                        return init;
                                    }())
                                  : package->zero_state();
            for (const auto& instruction : noisy.instructions()) {
                if (instruction.is_gate()) {
                    state = package->apply_gate(state, instruction.gate());
                }
            }
            digits = package->draw(state, u);
        }

        std::vector<std::size_t> outcome;
        outcome.reserve(measured.size());
        for (const std::size_t line : measured) {
            outcome.push_back(digits[line]);
        }
        ++counts[format_digit_key(outcome)];
    }
}

} // namespace

sim::Counts run_noisy(const Circuit& circuit, const NoiseModel& model,
                      std::uint64_t shots, std::uint64_t seed, Backend backend,
                      unsigned workers) {
    if (shots == 0) {
        throw std::invalid_argument("run_noisy: shots must be >= 1");
    }
    if (!circuit.has_measurements()) {
        throw std::invalid_argument(
            "run_noisy: circuit has no measurements to sample");
    }
    const std::vector<std::size_t> measured = circuit.measured_lines();

    workers = std::max(1U, workers);
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, shots));

    std::vector<std::map<std::string, std::uint64_t>> partial(workers);
    if (workers == 1) {
        run_shots(circuit, model, seed, 0, shots, backend, measured, partial[0]);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (shots + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = std::min(shots, begin + chunk);
            threads.emplace_back([&, w, begin, end] {
                run_shots(circuit, model, seed, begin, end, backend, measured,
                          partial[w]);
            });
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    sim::Counts result;
    result.shots = shots;
    for (const auto& map : partial) {
        for (const auto& [key, n] : map) {
            result.counts[key] += n;
        }
    }
    return result;
}

NoiseModel parse_noise_model(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("noise model: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") ||
        !doc["entries"].is_array()) {
        throw std::invalid_argument("noise model: expected {\"entries\": [...]}");
    }
    NoiseModel model;
    for (const auto& entry : doc["entries"]) {
        if (!entry.contains("gate") || !entry.contains("prob_x") ||
            !entry.contains("prob_z")) {
            throw std::invalid_argument(
                "noise model entry needs gate, prob_x and prob_z");
        }
        Policy policy = Policy::All;
        if (entry.contains("policy")) {
            const std::string p = entry["policy"].get<std::string>();
            if (p == "target") {
                policy = Policy::Target;
            } else if (p == "controls") {
                policy = Policy::Controls;
            } else if (p == "all") {
                policy = Policy::All;
            } else {
                throw std::invalid_argument("noise model: unknown policy '" + p +
                                            "'");
            }
        }
        const std::string gate = entry["gate"].get<std::string>();
        const Noise noise{entry["prob_x"].get<double>(),
                          entry["prob_z"].get<double>()};
        model.add_quantum_error_locally(noise, std::span(&gate, 1), policy);
    }
    return model;
}

NoiseModel load_noise_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open noise model file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_noise_model(buffer.str());
}

} // namespace ditkit::noise
