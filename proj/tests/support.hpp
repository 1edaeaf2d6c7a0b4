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

#ifndef DITKIT_TESTS_SUPPORT_HPP
#define DITKIT_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ditkit/core.hpp"
#include "ditkit/matrix.hpp"
#include "ditkit/statevector.hpp"

namespace ditkit::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Haar-random unitary via Gaussian matrix + Gram-Schmidt with the standard
/// phase fix (R diagonal made real positive).
inline Matrix haar_unitary(std::size_t d, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            a(i, j) = Complex(normal(gen), normal(gen));
        }
    }
    // Gram-Schmidt over columns.
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex overlap = 0.0;
            for (std::size_t r = 0; r < d; ++r) {
                overlap += std::conj(a(r, prev)) * a(r, c);
            }
            for (std::size_t r = 0; r < d; ++r) {
                a(r, c) -= overlap * a(r, prev);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            norm += std::norm(a(r, c));
        }
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < d; ++r) {
            a(r, c) /= norm;
        }
    }
    return a;
}

/// Normalized random state with Gaussian amplitudes.
inline sim::StateVector random_state(std::vector<std::size_t> dims,
                                     std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    sim::StateVector state = sim::zero_state(std::move(dims));
    double norm = 0.0;
    for (Complex& amp : state.amps) {
        amp = Complex(normal(gen), normal(gen));
        norm += std::norm(amp);
    }
    norm = std::sqrt(norm);
    for (Complex& amp : state.amps) {
        amp /= norm;
    }
    return state;
}

/// Random circuit over the standard gate set; `entangling` enables 2-qudit
/// gates and single-control modifiers.
inline Circuit random_circuit(const std::vector<std::size_t>& dims,
                              std::size_t gates, std::mt19937_64& gen,
                              bool entangling = true) {
    Circuit circuit;
    circuit.add_quantum_register({"q", dims});
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    std::uniform_int_distribution<std::size_t> line_dist(0, dims.size() - 1);
    for (std::size_t g = 0; g < gates; ++g) {
        const std::size_t line = line_dist(gen);
        const std::size_t d = dims[line];
        GateSpec gate;
        const int kind = static_cast<int>(gen() % (entangling && dims.size() > 1 ? 9 : 6));
        switch (kind) {
        case 0: gate.name = "x"; gate.lines = {line}; break;
        case 1: gate.name = "z"; gate.lines = {line}; break;
        case 2: gate.name = "s"; gate.lines = {line}; break;
        case 3: gate.name = "h"; gate.lines = {line}; break;
        case 4: {
            const std::size_t l2 = 1 + gen() % (d - 1);
            const std::size_t l1 = gen() % l2;
            gate.name = "rxy";
            gate.lines = {line};
            gate.params = {static_cast<double>(l1), static_cast<double>(l2),
                           angle(gen), angle(gen)};
            break;
        }
        case 5: {
            const std::size_t l2 = 1 + gen() % (d - 1);
            const std::size_t l1 = gen() % l2;
            gate.name = "rz";
            gate.lines = {line};
            gate.params = {static_cast<double>(l1), static_cast<double>(l2),
                           angle(gen)};
            break;
        }
        default: {
            std::size_t other = line_dist(gen);
            while (other == line) {
                other = line_dist(gen);
            }
            if (kind == 6) {
                gate.name = "csum";
                gate.lines = {line, other};
            } else if (kind == 7) {
                gate.name = "ms";
                gate.lines = {line, other};
                gate.params = {angle(gen)};
            } else {
                gate.name = "h";
                gate.lines = {line};
                gate.control =
                    ControlSpec{{{other, gen() % dims[other]}}};
            }
            break;
        }
        }
        circuit.add_gate(std::move(gate));
    }
    return circuit;
}

/// chi-squared critical value (upper tail z quantile) via the
/// Wilson-Hilferty approximation; z = 3.0902 matches p = 0.001.
inline double chi2_critical(std::size_t dof, double z = 3.0902) {
    const double k = static_cast<double>(dof);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

/// Taylor-series matrix exponential with scaling and squaring; independent
/// cross-check for the generator-built gates.
inline Matrix expm(const Matrix& a) {
    const std::size_t n = a.rows();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            norm = std::max(norm, std::abs(a(i, j)));
        }
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale /= 2.0;
        ++squarings;
    }
    Matrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scaled(i, j) = a(i, j) * scale;
        }
    }
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = term * scaled;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                term(i, j) /= static_cast<double>(k);
                result(i, j) += term(i, j);
            }
        }
    }
    for (int k = 0; k < squarings; ++k) {
        result = result * result;
    }
    return result;
}

} // namespace ditkit::testing

#endif
