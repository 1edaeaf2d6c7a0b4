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

// ditkit command line: parse | simulate | compile | stats.
// Exit codes: 0 success, 1 domain error (bad program, failing run),
// 2 usage or I/O error. stdout carries machine-parseable output only;
// diagnostics go to stderr.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ditkit/compiler.hpp"
#include "ditkit/core.hpp"
#include "ditkit/dd.hpp"
#include "ditkit/device.hpp"
#include "ditkit/noise.hpp"
#include "ditkit/qasm.hpp"
#include "ditkit/statevector.hpp"

namespace {

using namespace ditkit;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        return false;
    }
    out << text;
    return out.good();
}

void print_diagnostics(const std::vector<qasm::Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cerr << (d.severity == qasm::Severity::Error ? "error" : "warning")
                  << ": line " << d.span.line << ", column " << d.span.column
                  << ": " << d.message;
        if (!d.hint.empty()) {
            std::cerr << " (" << d.hint << ")";
        }
        std::cerr << "\n";
    }
}

std::optional<Circuit> parse_input(const std::string& path, int& exit_code) {
    const auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        exit_code = kUsageError;
        return std::nullopt;
    }
    auto result = qasm::parse(*text);
    print_diagnostics(result.diagnostics);
    if (!result.ok()) {
        exit_code = kDomainError;
        return std::nullopt;
    }
    return std::move(result.circuit);
}

std::vector<std::size_t> parse_key_digits(const std::string& key) {
    std::vector<std::size_t> digits;
    std::size_t value = 0;
    bool have = false;
    for (const char c : key) {
        if (c == ',') {
            digits.push_back(value);
            value = 0;
            have = false;
        } else {
            value = value * 10 + static_cast<std::size_t>(c - '0');
            have = true;
        }
    }
    if (have) {
        digits.push_back(value);
    }
    return digits;
}

std::string format_counts(const sim::Counts& counts) {
    std::vector<std::pair<std::vector<std::size_t>, std::string>> keys;
    keys.reserve(counts.counts.size());
    for (const auto& [key, n] : counts.counts) {
        keys.emplace_back(parse_key_digits(key), key);
    }
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const auto& [digits, key] : keys) {
        out += key + "\t" + std::to_string(counts.counts.at(key)) + "\n";
    }
    return out;
}

struct SimulateOptions {
    std::string input;
    std::string backend = "dense";
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    std::string noise_file;
    std::string output;
    bool dump_state = false;
};

int cmd_parse(const std::string& input, const std::string& output) {
    int exit_code = kOk;
    const auto circuit = parse_input(input, exit_code);
    if (!circuit) {
        return exit_code;
    }
    if (!write_output(output, qasm::emit(*circuit))) {
        std::cerr << "error: cannot write '" << output << "'\n";
        return kUsageError;
    }
    return kOk;
}

int cmd_simulate(const SimulateOptions& options) {
    int exit_code = kOk;
    const auto circuit = parse_input(options.input, exit_code);
    if (!circuit) {
        return exit_code;
    }
    const bool use_dd = options.backend == "dd";

    std::optional<noise::NoiseModel> model;
    if (!options.noise_file.empty()) {
        try {
            model = noise::load_noise_model(options.noise_file);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsageError;
        }
    }

    std::string out;
    try {
        if (options.shots > 0) {
            sim::Counts counts;
            if (circuit->has_measurements()) {
                counts = noise::run_noisy(
                    *circuit, model.value_or(noise::NoiseModel{}), options.shots,
                    options.seed,
                    use_dd ? noise::Backend::Dd : noise::Backend::Dense);
            } else if (model) {
                throw std::invalid_argument(
                    "noisy simulation needs measurements in the program");
            } else if (use_dd) {
                counts = dd::sample(dd::simulate(*circuit), options.shots,
                                    options.seed);
            } else {
                counts =
                    sim::sample(sim::simulate(*circuit), options.shots, options.seed);
            }
            out += format_counts(counts);
        }
        if (options.dump_state) {
            if (use_dd) {
                out += sim::dump_state(dd::to_vector(dd::simulate(*circuit)));
            } else {
                out += sim::dump_state(sim::simulate(*circuit));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    }
    if (!write_output(options.output, out)) {
        std::cerr << "error: cannot write '" << options.output << "'\n";
        return kUsageError;
    }
    return kOk;
}

std::string format_report(const compiler::CompileReport& report) {
    std::string out;
    out += "gates.before\t" + std::to_string(report.gates_before) + "\n";
    out += "gates.after\t" + std::to_string(report.gates_after) + "\n";
    out += "entangling.before\t" + std::to_string(report.entangling_before) + "\n";
    out += "entangling.after\t" + std::to_string(report.entangling_after) + "\n";
    for (const auto& [name, n] : report.gate_counts_before) {
        out += "gate." + name + ".before\t" + std::to_string(n) + "\n";
    }
    for (const auto& [name, n] : report.gate_counts_after) {
        out += "gate." + name + ".after\t" + std::to_string(n) + "\n";
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", report.expected_log_fidelity);
    out += std::string("log_fidelity\t") + buf + "\n";
    return out;
}

int cmd_compile(const std::string& input, const std::string& passes_arg,
                const std::string& device_file, const std::string& output) {
    std::vector<compiler::Pass> passes;
    std::stringstream names(passes_arg);
    std::string name;
    while (std::getline(names, name, ',')) {
        if (name.empty()) {
            continue;
        }
        const auto pass = compiler::pass_from_name(name);
        if (!pass) {
            std::cerr << "error: unknown pass '" << name << "'\n";
            return kUsageError;
        }
        passes.push_back(*pass);
    }

    std::optional<Device> device;
    if (!device_file.empty()) {
        try {
            device = load_device(device_file);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsageError;
        }
    }

    int exit_code = kOk;
    const auto circuit = parse_input(input, exit_code);
    if (!circuit) {
        return exit_code;
    }

    Circuit compiled;
    try {
        compiled = compiler::compile(*circuit, passes,
                                     device ? &device.value() : nullptr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    }

    const std::string report = format_report(
        compiler::compile_report(*circuit, compiled, device ? &device.value() : nullptr));
    if (!write_output(output, qasm::emit(compiled))) {
        std::cerr << "error: cannot write '" << output << "'\n";
        return kUsageError;
    }
    // With -o the program goes to the file and the report to stdout;
    // otherwise the program owns stdout and the report moves to stderr.
    if (output.empty()) {
        std::cerr << report;
    } else {
        std::cout << report;
    }
    return kOk;
}

int cmd_stats(const std::string& input) {
    int exit_code = kOk;
    const auto circuit = parse_input(input, exit_code);
    if (!circuit) {
        return exit_code;
    }
    const CircuitStats stats = circuit_stats(*circuit);
    std::string out;
    out += "qudits\t" + std::to_string(stats.qudits) + "\n";
    out += "dimension\t" +
           (stats.total_dimension ? std::to_string(*stats.total_dimension)
                                  : std::string("overflow")) +
           "\n";
    out += "gates\t" + std::to_string(stats.gates) + "\n";
    out += "entangling\t" + std::to_string(stats.entangling_gates) + "\n";
    out += "measurements\t" + std::to_string(stats.measurements) + "\n";
    out += "depth\t" + std::to_string(stats.depth) + "\n";
    for (const auto& [name, n] : stats.gate_counts) {
        out += "gate." + name + "\t" + std::to_string(n) + "\n";
    }
    std::cout << out;
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ditkit: a toolchain for mixed-dimensional quantum circuits"};
    app.require_subcommand(1);

    std::string parse_input_path;
    std::string parse_output;
    auto* parse_cmd = app.add_subcommand("parse", "parse and reprint a program");
    parse_cmd->add_option("input", parse_input_path, "DITQASM file")->required();
    parse_cmd->add_option("-o", parse_output, "output file (default stdout)");

    SimulateOptions sim_options;
    auto* simulate_cmd = app.add_subcommand("simulate", "run a program");
    simulate_cmd->add_option("input", sim_options.input, "DITQASM file")->required();
    simulate_cmd->add_option("--backend", sim_options.backend, "dense or dd")
        ->check(CLI::IsMember({"dense", "dd"}));
    simulate_cmd->add_option("--shots", sim_options.shots, "shots (0: state only)");
    simulate_cmd->add_option("--seed", sim_options.seed, "RNG seed (default 0)");
    simulate_cmd->add_option("--noise", sim_options.noise_file, "noise model file");
    simulate_cmd->add_flag("--dump-state", sim_options.dump_state,
                           "print the final state");
    simulate_cmd->add_option("-o", sim_options.output, "output file");

    std::string compile_input;
    std::string compile_passes;
    std::string compile_device;
    std::string compile_output;
    auto* compile_cmd = app.add_subcommand("compile", "compile a program");
    compile_cmd->add_option("input", compile_input, "DITQASM file")->required();
    compile_cmd->add_option("--passes", compile_passes,
                            "comma-separated pass names");
    compile_cmd->add_option("--device", compile_device, "device file");
    compile_cmd->add_option("-o", compile_output, "compiled program file");

    std::string stats_input;
    auto* stats_cmd = app.add_subcommand("stats", "print circuit statistics");
    stats_cmd->add_option("input", stats_input, "DITQASM file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    if (parse_cmd->parsed()) {
        return cmd_parse(parse_input_path, parse_output);
    }
    if (simulate_cmd->parsed()) {
        return cmd_simulate(sim_options);
    }
    if (compile_cmd->parsed()) {
        return cmd_compile(compile_input, compile_passes, compile_device,
                           compile_output);
    }
    return cmd_stats(stats_input);
}
