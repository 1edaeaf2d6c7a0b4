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

#include "ditkit/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace ditkit::qasm {

namespace {

enum class TokenKind {
    Identifier,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Plus,
    Minus,
    Star,
    Slash,
    Arrow,
    End,
    Bad,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    double value = 0.0; // for Number
    SourceSpan span;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token tok;
        tok.span = here();
        if (pos_ >= text_.size()) {
            tok.kind = TokenKind::End;
            return tok;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                advance();
            }
            tok.kind = TokenKind::Identifier;
            tok.text = text_.substr(start, pos_ - start);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
            if (pos_ < text_.size() && text_[pos_] == '.') {
                advance();
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    advance();
                }
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t mark = pos_;
                advance();
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                    advance();
                }
                if (pos_ < text_.size() &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    while (pos_ < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                        advance();
                    }
                } else {
                    pos_ = mark; // bare 'e' belongs to the next token
                }
            }
            tok.kind = TokenKind::Number;
            tok.text = text_.substr(start, pos_ - start);
            tok.value = std::strtod(std::string(tok.text).c_str(), nullptr);
        } else {
            advance();
            switch (c) {
            case '(': tok.kind = TokenKind::LParen; break;
            case ')': tok.kind = TokenKind::RParen; break;
            case '[': tok.kind = TokenKind::LBracket; break;
            case ']': tok.kind = TokenKind::RBracket; break;
            case ',': tok.kind = TokenKind::Comma; break;
            case ';': tok.kind = TokenKind::Semicolon; break;
            case '+': tok.kind = TokenKind::Plus; break;
            case '*': tok.kind = TokenKind::Star; break;
            case '/': tok.kind = TokenKind::Slash; break;
            case '-':
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    advance();
                    tok.kind = TokenKind::Arrow;
                } else {
                    tok.kind = TokenKind::Minus;
                }
                break;
            default: tok.kind = TokenKind::Bad; break;
            }
            tok.text = text_.substr(tok.span.byte_begin, pos_ - tok.span.byte_begin);
        }
        tok.span.byte_end = pos_;
        return tok;
    }

  private:
    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SourceSpan here() const { return {line_, col_, pos_, pos_}; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

SourceSpan merge(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.byte_end = std::max(a.byte_end, b.byte_end);
    return s;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    ParseResult run() {
        parse_header();
        while (current_.kind != TokenKind::End) {
            parse_statement();
        }
        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        bool failed = false;
        for (const auto& d : result.diagnostics) {
            failed |= d.severity == Severity::Error;
        }
        if (!failed) {
            result.circuit = std::move(circuit_);
        }
        return result;
    }

    double expr_only() {
        const double v = parse_expression();
        if (current_.kind != TokenKind::End) {
            error("trailing input after expression", current_.span);
        }
        if (!diagnostics_.empty()) {
            throw std::invalid_argument(diagnostics_.front().message);
        }
        return v;
    }

  private:
    void shift() { current_ = lexer_.next(); }

    void error(std::string message, const SourceSpan& span, std::string hint = {}) {
        diagnostics_.push_back(
            {Severity::Error, std::move(message), span, std::move(hint)});
    }

    /// Skips to just past the next semicolon so parsing can continue.
    void recover() {
        while (current_.kind != TokenKind::Semicolon &&
               current_.kind != TokenKind::End) {
            shift();
        }
        if (current_.kind == TokenKind::Semicolon) {
            shift();
        }
    }

    bool expect(TokenKind kind, const char* what) {
        if (current_.kind != kind) {
            error(std::string("expected ") + what + " but found '" +
                      std::string(current_.text) + "'",
                  current_.span);
            return false;
        }
        shift();
        return true;
    }

    std::optional<std::size_t> parse_uint(const char* what) {
        if (current_.kind != TokenKind::Number || current_.value < 0 ||
            current_.value != std::floor(current_.value)) {
            error(std::string("expected ") + what, current_.span);
            return std::nullopt;
        }
        const auto v = static_cast<std::size_t>(current_.value);
        shift();
        return v;
    }

    void parse_header() {
        if (current_.kind != TokenKind::Identifier || current_.text != "DITQASM") {
            error("missing DITQASM header", current_.span,
                  "programs start with 'DITQASM 2.0;'");
            return; // keep going; the body may still yield useful diagnostics
        }
        shift();
        if (current_.kind != TokenKind::Number || current_.text != "2.0") {
            error("unsupported DITQASM version '" + std::string(current_.text) +
                      "' (only 2.0 is accepted)",
                  current_.span);
            recover();
            return;
        }
        shift();
        expect(TokenKind::Semicolon, "';'");
    }

    struct Operand {
        std::string name;
        std::size_t index = 0;
        SourceSpan span;
    };

    std::optional<Operand> parse_operand() {
        if (current_.kind != TokenKind::Identifier) {
            error("expected register operand", current_.span);
            return std::nullopt;
        }
        Operand op;
        op.name = std::string(current_.text);
        op.span = current_.span;
        shift();
        if (!expect(TokenKind::LBracket, "'['")) {
            return std::nullopt;
        }
        const auto idx = parse_uint("register index");
        if (!idx) {
            return std::nullopt;
        }
        op.index = *idx;
        if (!expect(TokenKind::RBracket, "']'")) {
            return std::nullopt;
        }
        op.span.byte_end = current_.span.byte_begin;
        return op;
    }

    double parse_expression() { return parse_additive(); }

    double parse_additive() {
        double lhs = parse_multiplicative();
        while (current_.kind == TokenKind::Plus || current_.kind == TokenKind::Minus) {
            const bool add = current_.kind == TokenKind::Plus;
            shift();
            const double rhs = parse_multiplicative();
            lhs = add ? lhs + rhs : lhs - rhs;
        }
        return lhs;
    }

    double parse_multiplicative() {
        double lhs = parse_unary();
        while (current_.kind == TokenKind::Star || current_.kind == TokenKind::Slash) {
            const bool mul = current_.kind == TokenKind::Star;
            const SourceSpan span = current_.span;
            shift();
            const double rhs = parse_unary();
            if (!mul && rhs == 0.0) {
                error("division by zero", span);
                return 0.0;
            }
            lhs = mul ? lhs * rhs : lhs / rhs;
        }
        return lhs;
    }

    double parse_unary() {
        if (current_.kind == TokenKind::Minus) {
            shift();
            return -parse_unary();
        }
        if (current_.kind == TokenKind::Number) {
            const double v = current_.value;
            shift();
            return v;
        }
        if (current_.kind == TokenKind::Identifier && current_.text == "pi") {
            shift();
            return std::numbers::pi;
        }
        if (current_.kind == TokenKind::LParen) {
            shift();
            const double v = parse_expression();
            expect(TokenKind::RParen, "')'");
            return v;
        }
        error("expected numeric expression", current_.span);
        shift(); // guarantee progress
        return 0.0;
    }

    void parse_statement() {
        if (current_.kind == TokenKind::Identifier) {
            if (current_.text == "qreg") {
                parse_qreg();
                return;
            }
            if (current_.text == "creg") {
                parse_creg();
                return;
            }
            if (current_.text == "measure") {
                parse_measure();
                return;
            }
            parse_gate();
            return;
        }
        error("expected a statement", current_.span);
        shift();
        recover();
    }

    void parse_qreg() {
        const SourceSpan start = current_.span;
        shift(); // qreg
        if (current_.kind != TokenKind::Identifier) {
            error("expected register name", current_.span);
            recover();
            return;
        }
        QuantumRegister reg;
        reg.name = std::string(current_.text);
        shift();
        std::size_t declared = 0;
        if (!expect(TokenKind::LBracket, "'['")) {
            recover();
            return;
        }
        if (const auto v = parse_uint("register size")) {
            declared = *v;
        } else {
            recover();
            return;
        }
        if (!expect(TokenKind::RBracket, "']'") ||
            !expect(TokenKind::LBracket, "'['")) {
            recover();
            return;
        }
        while (true) {
            const auto d = parse_uint("qudit dimension");
            if (!d) {
                recover();
                return;
            }
            reg.dims.push_back(*d);
            if (current_.kind == TokenKind::Comma) {
                shift();
                continue;
            }
            break;
        }
        if (!expect(TokenKind::RBracket, "']'")) {
            recover();
            return;
        }
        const SourceSpan span = merge(start, current_.span);
        expect(TokenKind::Semicolon, "';'");
        if (reg.dims.size() != declared) {
            error("register '" + reg.name + "' declares " + std::to_string(declared) +
                      " qudit(s) but lists " + std::to_string(reg.dims.size()) +
                      " dimension(s)",
                  span);
            return;
        }
        try {
            circuit_.add_quantum_register(std::move(reg));
        } catch (const std::exception& e) {
            error(e.what(), span);
        }
    }

    void parse_creg() {
        const SourceSpan start = current_.span;
        shift(); // creg
        if (current_.kind != TokenKind::Identifier) {
            error("expected register name", current_.span);
            recover();
            return;
        }
        ClassicRegister reg;
        reg.name = std::string(current_.text);
        shift();
        if (!expect(TokenKind::LBracket, "'['")) {
            recover();
            return;
        }
        if (const auto v = parse_uint("register size")) {
            reg.size = *v;
        } else {
            recover();
            return;
        }
        if (!expect(TokenKind::RBracket, "']'")) {
            recover();
            return;
        }
        const SourceSpan span = merge(start, current_.span);
        expect(TokenKind::Semicolon, "';'");
        try {
            circuit_.add_classic_register(std::move(reg));
        } catch (const std::exception& e) {
            error(e.what(), span);
        }
    }

    void parse_measure() {
        const SourceSpan start = current_.span;
        shift(); // measure
        const auto q = parse_operand();
        if (!q || !expect(TokenKind::Arrow, "'->'")) {
            recover();
            return;
        }
        const auto c = parse_operand();
        if (!c) {
            recover();
            return;
        }
        const SourceSpan span = merge(start, current_.span);
        expect(TokenKind::Semicolon, "';'");
        try {
            circuit_.add_measurement(circuit_.line_of(q->name, q->index),
                                     circuit_.cell_of(c->name, c->index));
        } catch (const std::exception& e) {
            error(e.what(), span);
        }
    }

    void parse_gate() {
        const SourceSpan start = current_.span;
        GateSpec gate;
        gate.name = std::string(current_.text);
        shift();

        if (gate_traits(gate.name) == nullptr) {
            error("unknown gate '" + gate.name + "'", start);
            recover();
            return;
        }

        if (current_.kind == TokenKind::LParen) {
            shift();
            while (true) {
                gate.params.push_back(parse_expression());
                if (current_.kind == TokenKind::Comma) {
                    shift();
                    continue;
                }
                break;
            }
            if (!expect(TokenKind::RParen, "')'")) {
                recover();
                return;
            }
        }

        std::vector<Operand> operands;
        while (true) {
            const auto op = parse_operand();
            if (!op) {
                recover();
                return;
            }
            operands.push_back(*op);
            if (current_.kind == TokenKind::Comma) {
                shift();
                continue;
            }
            break;
        }

        if (current_.kind == TokenKind::Identifier && current_.text == "ctl") {
            shift();
            std::vector<Operand> controls;
            while (current_.kind == TokenKind::Identifier) {
                const auto op = parse_operand();
                if (!op) {
                    recover();
                    return;
                }
                controls.push_back(*op);
            }
            if (controls.empty()) {
                error("'ctl' requires at least one control operand", current_.span);
                recover();
                return;
            }
            if (!expect(TokenKind::LBracket, "'['")) {
                recover();
                return;
            }
            std::vector<std::size_t> levels;
            while (true) {
                const auto v = parse_uint("control level");
                if (!v) {
                    recover();
                    return;
                }
                levels.push_back(*v);
                if (current_.kind == TokenKind::Comma) {
                    shift();
                    continue;
                }
                break;
            }
            if (!expect(TokenKind::RBracket, "']'")) {
                recover();
                return;
            }
            if (levels.size() != controls.size()) {
                error("control clause lists " + std::to_string(controls.size()) +
                          " operand(s) but " + std::to_string(levels.size()) +
                          " level(s)",
                      merge(start, current_.span));
                recover();
                return;
            }
            ControlSpec spec;
            try {
                for (std::size_t i = 0; i < controls.size(); ++i) {
                    spec.controls.emplace_back(
                        circuit_.line_of(controls[i].name, controls[i].index),
                        levels[i]);
                }
            } catch (const std::exception& e) {
                error(e.what(), merge(start, current_.span));
                recover();
                return;
            }
            gate.control = std::move(spec);
        }

        const SourceSpan span = merge(start, current_.span);
        expect(TokenKind::Semicolon, "';'");

        try {
            for (const auto& op : operands) {
                gate.lines.push_back(circuit_.line_of(op.name, op.index));
            }
            circuit_.add_gate(std::move(gate));
        } catch (const std::exception& e) {
            error(e.what(), span);
        }
    }

    Lexer lexer_;
    Token current_;
    Circuit circuit_;
    std::vector<Diagnostic> diagnostics_;
};

/// 17 significant digits: enough for every double to roundtrip bit-exactly.
std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ParseResult parse(std::string_view text) {
    return Parser(text).run();
}

double parse_expr(std::string_view text) {
    return Parser(text).expr_only();
}

std::string emit(const Circuit& circuit) {
    std::string out = "DITQASM 2.0;\n";
    for (const auto& reg : circuit.quantum_registers()) {
        out += "qreg " + reg.name + " [" + std::to_string(reg.size()) + "][";
        for (std::size_t i = 0; i < reg.dims.size(); ++i) {
            if (i > 0) {
                out += ", ";
            }
            out += std::to_string(reg.dims[i]);
        }
        out += "];\n";
    }
    for (const auto& reg : circuit.classic_registers()) {
        out += "creg " + reg.name + "[" + std::to_string(reg.size) + "];\n";
    }
    for (const auto& instruction : circuit.instructions()) {
        if (!instruction.is_gate()) {
            const auto& m = instruction.measurement();
            out += "measure " + circuit.line_label(m.line) + " -> " +
                   circuit.cell_label(m.cell) + ";\n";
            continue;
        }
        const GateSpec& gate = instruction.gate();
        if (gate.name == "cu") {
            throw std::invalid_argument("cu gates have no DITQASM text form");
        }
        const GateTraits* traits = gate_traits(gate.name);
        out += gate.name;
        if (!gate.params.empty()) {
            out += " (";
            for (std::size_t i = 0; i < gate.params.size(); ++i) {
                if (i > 0) {
                    out += ", ";
                }
                if (i < traits->level_params) {
                    out += std::to_string(
                        static_cast<long long>(std::llround(gate.params[i])));
                } else {
                    out += format_angle(gate.params[i]);
                }
            }
            out += ")";
        }
        for (std::size_t i = 0; i < gate.lines.size(); ++i) {
            out += (i == 0) ? " " : ", ";
            out += circuit.line_label(gate.lines[i]);
        }
        if (gate.control) {
            out += " ctl";
            for (const auto& [line, level] : gate.control->controls) {
                out += " " + circuit.line_label(line);
            }
            out += " [";
            for (std::size_t i = 0; i < gate.control->controls.size(); ++i) {
                if (i > 0) {
                    out += ", ";
                }
                out += std::to_string(gate.control->controls[i].second);
            }
            out += "]";
        }
        out += ";\n";
    }
    return out;
}

} // namespace ditkit::qasm
