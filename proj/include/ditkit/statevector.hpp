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

#ifndef DITKIT_STATEVECTOR_HPP
#define DITKIT_STATEVECTOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ditkit/core.hpp"

namespace ditkit::sim {

/// Largest amplitude vector the dense backend will allocate. Circuits beyond
/// this are rejected up front; the decision-diagram backend has no such cap.
inline constexpr std::uint64_t kMaxDenseDimension = std::uint64_t(1) << 24;

/// Complex amplitudes over a mixed-radix basis, first-declared qudit most
/// significant (see radix_index).
struct StateVector {
    std::vector<std::size_t> dims;
    std::vector<Complex> amps;

    std::size_t dimension() const { return amps.size(); }
    double norm_squared() const;
};

/// |0...0> over the given dimensions. Rejects products above
/// kMaxDenseDimension (or 64-bit overflow) so infeasible dense allocations
/// fail loudly instead of exhausting memory.
StateVector zero_state(std::vector<std::size_t> dims);

/// Measurement outcomes keyed by comma-joined digit strings ("2,0,1").
struct Counts {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
};

/// In-place fiber-wise gate application; norm-preserving.
void apply_gate(StateVector& state, const GateSpec& gate);

/// Runs all gates in program order. Terminal measurements are ignored for
/// state retrieval. Uses circuit.initial_state() when present, else |0...0>.
StateVector simulate(const Circuit& circuit);

/// i.i.d. outcome draws from |amps|^2; deterministic for a given seed and
/// independent of any shot-level parallelism. Rejects states whose norm
/// deviates from 1 by more than 1e-6.
Counts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// One line per basis state with |amp| >= 1e-14: "digits<TAB>re<TAB>im".
std::string dump_state(const StateVector& state);

// RNG plumbing shared by the samplers and the noise engine. Each shot uses
// an independent generator derived from (seed, shot index), so results do
// not depend on how shots are scheduled.

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class ShotRng {
  public:
    ShotRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix_seed(seed, stream)) {}

    /// Uniform in [0, 1).
    double uniform();

  private:
    std::uint64_t next_word();
    std::uint64_t state_;
};

/// Inverse-CDF draw over |amps|^2 in basis order. `u` in [0, 1).
std::size_t draw_outcome(const StateVector& state, double u);

} // namespace ditkit::sim

#endif
