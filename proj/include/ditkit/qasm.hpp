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

#ifndef DITKIT_QASM_HPP
#define DITKIT_QASM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ditkit/core.hpp"

namespace ditkit::qasm {

/// Byte range of a token or statement; line/column are 1-based.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t byte_begin = 0;
    std::size_t byte_end = 0;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
    std::string hint; // may be empty
};

struct ParseResult {
    std::optional<Circuit> circuit; // set iff no error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return circuit.has_value(); }
};

/// Parses DITQASM 2.0 text. Never throws on malformed input; problems are
/// reported as diagnostics ordered by position.
ParseResult parse(std::string_view text);

/// Evaluates a parameter expression ("pi/2", "3*pi/4 + 0.5", ...).
/// Throws std::invalid_argument on malformed input or division by zero.
double parse_expr(std::string_view text);

/// Canonical DITQASM text: one statement per line, angles with 17 significant
/// digits, declarations in original order. parse(emit(c)) reproduces c
/// structurally. Throws for circuits containing "cu" gates, which have no
/// textual form.
std::string emit(const Circuit& circuit);

} // namespace ditkit::qasm

#endif
