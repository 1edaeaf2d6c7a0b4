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

#ifndef DITKIT_NOISE_HPP
#define DITKIT_NOISE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ditkit/core.hpp"
#include "ditkit/statevector.hpp"

namespace ditkit::noise {

/// Probabilities of a shift-type (X) and a phase-type (Z) error, in that
/// argument order.
struct Noise {
    double prob_x = 0.0;
    double prob_z = 0.0;
};

/// Which qudits of a multi-qudit gate receive independent error coins.
enum class Policy { Target, Controls, All };

struct GateNoise {
    Noise noise;
    Policy policy = Policy::All;
};

class NoiseModel {
  public:
    /// Registers `noise` for every listed gate; later registrations
    /// overwrite earlier ones for the same name. Unknown names are rejected.
    void add_quantum_error_locally(const Noise& noise,
                                   std::span<const std::string> gate_names,
                                   Policy policy = Policy::All);

    const std::map<std::string, GateNoise>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

  private:
    std::map<std::string, GateNoise> entries_;
};

/// One stochastic error insertion: an X- or Z-type gate appended right after
/// the instruction at `instruction_index`, acting on `line`. Subspace gates
/// (rxy, rz, crot target, pswap) receive subspace errors on their own level
/// pair; all other gates receive full-space generalized Pauli errors.
struct ErrorEvent {
    std::size_t instruction_index = 0;
    std::size_t line = 0;
    bool is_x = true; // false: phase-type (Z)
    std::optional<std::pair<std::size_t, std::size_t>> levels; // subspace errors

    bool operator==(const ErrorEvent&) const = default;
};

enum class Backend { Dense, Dd };

/// The exact error events shot `shot` of a run with `seed` injects.
/// Deterministic; identical across backends and parallelism settings.
std::vector<ErrorEvent> shot_trace(const Circuit& circuit,
                                   const NoiseModel& model, std::uint64_t seed,
                                   std::uint64_t shot);

/// The circuit with the given error gates spliced in after their
/// instructions; replaying a shot_trace reproduces that shot's state.
Circuit inject_errors(const Circuit& circuit,
                      std::span<const ErrorEvent> events);

/// Shot-based noisy execution: per shot, errors are drawn from a
/// shot-indexed RNG stream, the distorted circuit is simulated on the chosen
/// backend, and one outcome is drawn. Outcome keys are the digits of the
/// measured lines in classical-cell order. Requires terminal measurements.
/// `workers` only partitions the shot range; results are identical for any
/// worker count.
sim::Counts run_noisy(const Circuit& circuit, const NoiseModel& model,
                      std::uint64_t shots, std::uint64_t seed,
                      Backend backend = Backend::Dense, unsigned workers = 1);

/// Noise model file support (JSON):
///   {"entries": [{"gate": "x", "prob_x": 0.01, "prob_z": 0.001,
///                 "policy": "all"}]}
/// "policy" is optional and defaults to "all".
NoiseModel parse_noise_model(const std::string& json_text);
NoiseModel load_noise_model(const std::string& path);

} // namespace ditkit::noise

#endif
