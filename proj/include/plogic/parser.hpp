#pragma once

// Description files.
//
//   # comment
//   const a, b.
//   axiom ~n(X) | c(X).
//   def r1: c(X) => ~s(X).
//   wrn w1: q(X), sc(X) ~> f(X).
//   prefer r2 > r1.
//   prefer r2[X=b] > r1[X=b].
//
// Formulas: `~` binds tightest, then `&`, then `|`; parentheses group.
// `and(...)`, `or(...)` and `not(...)` are keyword forms.  Identifiers
// starting with an upper-case letter or `_` are variables.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plogic/description.hpp"
#include "plogic/syntax.hpp"

namespace plogic {

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

enum class Tok : unsigned char {
    ident, variable, dot, comma, colon, lparen, rparen, lbracket, rbracket,
    equals, greater, tilde, amp, bar, defeasible_arrow, warning_arrow, strict_arrow, end
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        const std::size_t l = line, cl = col;
        auto two = src.substr(i, 2);
        auto emit = [&](Tok k, std::size_t n) {
            out.push_back({k, std::string(src.substr(i, n)), l, cl});
            advance(n);
        };
        if (two == "=>") { emit(Tok::defeasible_arrow, 2); continue; }
        if (two == "~>") { emit(Tok::warning_arrow, 2); continue; }
        if (two == "->") { emit(Tok::strict_arrow, 2); continue; }
        switch (c) {
        case '.': emit(Tok::dot, 1); continue;
        case ',': emit(Tok::comma, 1); continue;
        case ':': emit(Tok::colon, 1); continue;
        case '(': emit(Tok::lparen, 1); continue;
        case ')': emit(Tok::rparen, 1); continue;
        case '[': emit(Tok::lbracket, 1); continue;
        case ']': emit(Tok::rbracket, 1); continue;
        case '=': emit(Tok::equals, 1); continue;
        case '>': emit(Tok::greater, 1); continue;
        case '~': emit(Tok::tilde, 1); continue;
        case '&': emit(Tok::amp, 1); continue;
        case '|': emit(Tok::bar, 1); continue;
        default: break;
        }
        if (ident_start(c)) {
            std::size_t n = 1;
            while (i + n < src.size() && ident_char(src[i + n])) ++n;
            const bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
            emit(var ? Tok::variable : Tok::ident, n);
            continue;
        }
        throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    DescriptionSpec description() {
        DescriptionSpec spec;
        while (peek().kind != Tok::end) statement(spec);
        return spec;
    }

    Formula lone_formula() {
        auto f = formula();
        if (peek().kind == Tok::dot) next();
        expect(Tok::end, "end of input");
        return f;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what + (peek().kind == Tok::end ? " before end of input" : ", found '" + peek().text + "'"));
        return next();
    }

    bool accept(Tok k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }

    void statement(DescriptionSpec& spec) {
        const auto& kw = expect(Tok::ident, "a statement keyword");
        if (kw.text == "const") {
            do spec.constants.push_back(expect(Tok::ident, "a constant name").text);
            while (accept(Tok::comma));
        } else if (kw.text == "axiom") {
            spec.axioms.push_back(formula());
        } else if (kw.text == "def" || kw.text == "wrn") {
            spec.rules.push_back(rule(kw.text == "def" ? RuleKind::defeasible : RuleKind::warning));
        } else if (kw.text == "prefer") {
            PriorityStatement p;
            p.superior = expect(Tok::ident, "a rule name").text;
            p.superior_at = pin();
            expect(Tok::greater, "'>'");
            p.inferior = expect(Tok::ident, "a rule name").text;
            p.inferior_at = pin();
            spec.priorities.push_back(std::move(p));
        } else {
            fail(kw, "unknown statement '" + kw.text + "'");
        }
        expect(Tok::dot, "'.'");
    }

    Rule rule(RuleKind kind) {
        const auto name = expect(Tok::ident, "a rule name").text;
        expect(Tok::colon, "':'");
        FormulaSet ants;
        const Tok arrow = kind == RuleKind::defeasible ? Tok::defeasible_arrow : Tok::warning_arrow;
        auto at_arrow = [&] {
            auto k = peek().kind;
            return k == Tok::defeasible_arrow || k == Tok::warning_arrow || k == Tok::strict_arrow;
        };
        if (!at_arrow()) {
            do ants.push_back(formula());
            while (accept(Tok::comma));
        }
        const auto& a = peek();
        if (a.kind == Tok::strict_arrow)
            fail(a, "strict rules cannot be written directly; state the fact as an axiom");
        if (a.kind != arrow)
            fail(a, kind == RuleKind::defeasible ? "expected '=>' in a def rule" : "expected '~>' in a wrn rule");
        next();
        auto c = formula();
        return Rule(name, kind, std::move(ants), std::move(c));
    }

    std::optional<Substitution> pin() {
        if (!accept(Tok::lbracket)) return std::nullopt;
        Substitution s;
        do {
            const auto& v = expect(Tok::variable, "a variable");
            expect(Tok::equals, "'='");
            const auto& c = expect(Tok::ident, "a constant");
            if (s.find(v.text)) fail(v, "variable " + v.text + " bound twice");
            s.bind(v.text, c.text);
        } while (accept(Tok::comma));
        expect(Tok::rbracket, "']'");
        return s;
    }

    Formula formula() {
        std::vector<Formula> ops{conjunct()};
        while (accept(Tok::bar)) ops.push_back(conjunct());
        return ops.size() == 1 ? ops.front() : Formula::disjunction(std::move(ops));
    }

    Formula conjunct() {
        std::vector<Formula> ops{unary()};
        while (accept(Tok::amp)) ops.push_back(unary());
        return ops.size() == 1 ? ops.front() : Formula::conjunction(std::move(ops));
    }

    Formula unary() {
        if (accept(Tok::tilde)) return negate(unary());
        if (accept(Tok::lparen)) {
            auto f = formula();
            expect(Tok::rparen, "')'");
            return f;
        }
        const auto& t = peek();
        if (t.kind == Tok::variable) fail(t, "variable " + t.text + " used where a formula is expected");
        if (t.kind != Tok::ident) fail(t, t.kind == Tok::end ? "expected a formula before end of input" : "expected a formula, found '" + t.text + "'");
        if ((t.text == "and" || t.text == "or" || t.text == "not") && peek(1).kind == Tok::lparen) {
            const auto& kw = next();
            next();
            if (kw.text == "and" || kw.text == "or") {
                if (peek().kind == Tok::rparen) fail(peek(), "empty " + std::string(kw.text == "and" ? "conjunction" : "disjunction"));
            }
            std::vector<Formula> ops{formula()};
            while (accept(Tok::comma)) ops.push_back(formula());
            expect(Tok::rparen, "')'");
            if (kw.text == "not") {
                if (ops.size() != 1) fail(kw, "not() takes exactly one formula");
                return negate(ops.front());
            }
            return kw.text == "and" ? Formula::conjunction(std::move(ops)) : Formula::disjunction(std::move(ops));
        }
        return positive(atom());
    }

    Atom atom() {
        Atom a{next().text, {}};
        if (accept(Tok::lparen)) {
            do {
                const auto& t = next();
                if (t.kind == Tok::variable) a.args.push_back(Term::variable(t.text));
                else if (t.kind == Tok::ident) a.args.push_back(Term::constant(t.text));
                else fail(t, "expected a term");
            } while (accept(Tok::comma));
            expect(Tok::rparen, "')'");
        }
        return a;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline DescriptionSpec parse_description(std::string_view text) { return detail::Parser(text).description(); }

/// A single formula, optionally followed by '.'.
inline Formula parse_formula(std::string_view text) { return detail::Parser(text).lone_formula(); }

/// Parses and builds.
inline PlausibleDescription load_description(std::string_view text) { return build_description(parse_description(text)); }

/// Canonical text of a description; parse_description inverts it.
inline std::string print_description(const DescriptionSpec& spec) {
    std::string out;
    if (!spec.constants.empty()) {
        out += "const ";
        for (std::size_t i = 0; i < spec.constants.size(); ++i) out += (i ? ", " : "") + spec.constants[i];
        out += ".\n";
    }
    for (const auto& a : spec.axioms) out += "axiom " + to_string(a) + ".\n";
    for (const auto& r : spec.rules) {
        out += (r.kind == RuleKind::warning ? "wrn " : "def ") + r.name + ":";
        for (std::size_t i = 0; i < r.antecedents.size(); ++i) out += (i ? ", " : " ") + to_string(r.antecedents[i]);
        out += std::string(" ") + arrow(r.kind) + " " + to_string(r.consequent) + ".\n";
    }
    for (const auto& p : spec.priorities) {
        out += "prefer " + p.superior + (p.superior_at ? to_string(*p.superior_at) : "") + " > " + p.inferior +
               (p.inferior_at ? to_string(*p.inferior_at) : "") + ".\n";
    }
    return out;
}

/// FNV-1a of the canonical text; identifies the description a certificate
/// was produced from.
inline std::string description_hash(const DescriptionSpec& spec) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : print_description(spec)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return s;
}

}  // namespace plogic
