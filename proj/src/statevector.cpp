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

#include "ditkit/statevector.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ditkit/gates.hpp"

namespace ditkit::sim {

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amps) {
        total += std::norm(a);
    }
    return total;
}

StateVector zero_state(std::vector<std::size_t> dims) {
    const auto total = checked_total_dimension(dims);
    if (!total || *total > kMaxDenseDimension) {
        throw std::domain_error(
            "dense backend cannot represent this state: dimension product "
            "exceeds " +
            std::to_string(kMaxDenseDimension));
    }
    StateVector state;
    state.dims = std::move(dims);
    state.amps.assign(static_cast<std::size_t>(*total), Complex(0.0));
    state.amps[0] = 1.0;
    return state;
}

void apply_gate(StateVector& state, const GateSpec& gate) {
    apply_gate_in_place(state.amps, state.dims, gate);
}

StateVector simulate(const Circuit& circuit) {
    StateVector state = zero_state(circuit.dims());
    if (circuit.initial_state()) {
        state.amps = *circuit.initial_state();
    }
    for (const auto& instruction : circuit.instructions()) {
        if (instruction.is_gate()) {
            apply_gate(state, instruction.gate());
        }
    }
    return state;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over the combined words.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t ShotRng::next_word() {
    // splitmix64 stream; plenty for sampling purposes and fully portable.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double ShotRng::uniform() {
    return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

std::size_t draw_outcome(const StateVector& state, double u) {
    double cumulative = 0.0;
    const std::size_t n = state.amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        cumulative += std::norm(state.amps[i]);
        if (u < cumulative) {
            return i;
        }
    }
    return n - 1; // numerical slack at the top end
}

Counts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be >= 1");
    }
    if (std::abs(state.norm_squared() - 1.0) > 1e-6) {
        throw std::invalid_argument(
            "sample: state is not normalized (refusing to renormalize)");
    }
    Counts result;
    result.shots = shots;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        ShotRng rng(seed, shot);
        const std::size_t outcome = draw_outcome(state, rng.uniform());
        const auto digits = index_to_digits(outcome, state.dims);
        ++result.counts[format_digit_key(digits)];
    }
    return result;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dims != b.dims) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        overlap += std::conj(a.amps[i]) * b.amps[i];
    }
    return std::norm(overlap);
}

std::string dump_state(const StateVector& state) {
    std::string out;
    char buf[96];
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const Complex a = state.amps[i];
        if (std::abs(a) < 1e-14) {
            continue;
        }
        const auto digits = index_to_digits(i, state.dims);
        std::snprintf(buf, sizeof(buf), "\t%.17g\t%.17g\n", a.real(), a.imag());
        out += format_digit_key(digits);
        out += buf;
    }
    return out;
}

} // namespace ditkit::sim
