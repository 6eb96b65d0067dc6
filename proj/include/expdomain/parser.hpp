#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expdomain/context.hpp"
#include "expdomain/domain.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/expr.hpp"
#include "expdomain/simulate.hpp"

namespace expdomain {

/// Parsed form of a `.exd` document: one context block with its optional
/// constraint, basis and actual sections.
struct ContextSpec {
    std::string name;
    std::vector<std::string> atoms;
    std::vector<ExprPtr> constraints;
    std::vector<ExprPtr> basis;
    std::vector<std::pair<std::string, bool>> actual;
};

enum class GoalKind : unsigned char { Conjunction, Dovetail };

/// Parsed form of a scenario document for `simulate`.
struct ScenarioSpec {
    std::vector<std::pair<std::string, TestProcess>> tests;
    GoalKind goal = GoalKind::Conjunction;
    std::vector<std::string> goal_tests;
    std::uint64_t budget = 0;

    std::vector<TestProcess> goal_processes() const {
        std::vector<TestProcess> out;
        out.reserve(goal_tests.size());
        for (const auto& name : goal_tests) {
            for (const auto& [n, p] : tests)
                if (n == name) {
                    out.push_back(p);
                    break;
                }
        }
        return out;
    }
};

namespace detail {

enum class Tok : unsigned char {
    Ident, Integer, LBrace, RBrace, LParen, RParen, Colon, Semi, Comma, Equal, Bang, Amp, Pipe, Arrow, End
};

struct Token {
    Tok kind;
    std::string text;
    SourceLoc loc;
};

inline const char* token_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Integer: return "integer";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Colon: return "':'";
        case Tok::Semi: return "';'";
        case Tok::Comma: return "','";
        case Tok::Equal: return "'='";
        case Tok::Bang: return "'!'";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Arrow: return "'->'";
        case Tok::End: return "end of input";
    }
    return "?";
}

inline bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_reserved(std::string_view word) {
    static constexpr std::string_view words[] = {"context", "atoms",  "constraints",   "basis",
                                                 "actual",  "true",   "false",         "test",
                                                 "goal",    "budget", "terminates_at", "diverges",
                                                 "conj",    "dovetail"};
    return std::find(std::begin(words), std::end(words), word) != std::end(words);
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_trivia();
        const SourceLoc loc{line_, column_};
        if (pos_ >= text_.size()) return {Tok::End, "", loc};
        const char c = text_[pos_];
        if (is_ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
            return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), loc};
        }
        if (is_digit(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) advance();
            return {Tok::Integer, std::string(text_.substr(start, pos_ - start)), loc};
        }
        advance();
        switch (c) {
            case '{': return {Tok::LBrace, "{", loc};
            case '}': return {Tok::RBrace, "}", loc};
            case '(': return {Tok::LParen, "(", loc};
            case ')': return {Tok::RParen, ")", loc};
            case ':': return {Tok::Colon, ":", loc};
            case ';': return {Tok::Semi, ";", loc};
            case ',': return {Tok::Comma, ",", loc};
            case '=': return {Tok::Equal, "=", loc};
            case '!': return {Tok::Bang, "!", loc};
            case '&': return {Tok::Amp, "&", loc};
            case '|': return {Tok::Pipe, "|", loc};
            case '-':
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    advance();
                    return {Tok::Arrow, "->", loc};
                }
                throw ParseError(loc.line, loc.column, {"'->'"}, "'-'");
            default:
                throw ParseError(loc.line, loc.column, {}, printable(c));
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    static std::string printable(char c) {
        if (c >= 32 && c < 127) return std::string("'") + c + "'";
        return "byte 0x" + to_hex(static_cast<unsigned char>(c));
    }

    static std::string to_hex(unsigned char c) {
        static const char digits[] = "0123456789abcdef";
        return {digits[c >> 4], digits[c & 15]};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// Recursive-descent parser for both document kinds; precedence
// ! > & > | > ->, with -> right-associative and &,| left-associative.
class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    ExprPtr parse_expression_document() {
        ExprPtr e = parse_expr();
        expect(Tok::End);
        return e;
    }

    ContextSpec parse_context_document() {
        ContextSpec spec;
        expect_keyword("context");
        spec.name = expect_plain_ident();
        expect(Tok::LBrace);

        expect_keyword("atoms");
        expect(Tok::Colon);
        spec.atoms.push_back(expect_plain_ident());
        while (accept(Tok::Comma)) spec.atoms.push_back(expect_plain_ident());
        expect(Tok::Semi);

        bool saw_constraints = false, saw_basis = false, saw_actual = false;
        while (current_.kind != Tok::RBrace) {
            const Token section = current_;
            if (section.kind != Tok::Ident)
                throw ParseError(section.loc.line, section.loc.column,
                                 {"'constraints'", "'basis'", "'actual'", "'}'"}, describe(section));
            if (section.text == "constraints") {
                if (saw_constraints) duplicate_section(section);
                saw_constraints = true;
                shift();
                expect(Tok::Colon);
                spec.constraints.push_back(parse_expr());
                expect(Tok::Semi);
                while (!at_section_boundary()) {
                    spec.constraints.push_back(parse_expr());
                    expect(Tok::Semi);
                }
            } else if (section.text == "basis") {
                if (saw_basis) duplicate_section(section);
                saw_basis = true;
                shift();
                expect(Tok::Colon);
                spec.basis.push_back(parse_expr());
                while (accept(Tok::Comma)) spec.basis.push_back(parse_expr());
                expect(Tok::Semi);
            } else if (section.text == "actual") {
                if (saw_actual) duplicate_section(section);
                saw_actual = true;
                shift();
                expect(Tok::Colon);
                spec.actual.push_back(parse_actual_entry());
                while (accept(Tok::Comma)) spec.actual.push_back(parse_actual_entry());
                expect(Tok::Semi);
            } else {
                throw ParseError(section.loc.line, section.loc.column,
                                 {"'constraints'", "'basis'", "'actual'", "'}'"}, describe(section));
            }
        }
        expect(Tok::RBrace);
        expect(Tok::End);
        validate(spec);
        return spec;
    }

    ScenarioSpec parse_scenario_document() {
        ScenarioSpec spec;
        bool saw_goal = false, saw_budget = false;
        std::vector<SourceLoc> goal_name_locs;
        while (current_.kind != Tok::End) {
            const Token head = current_;
            if (head.kind != Tok::Ident)
                throw ParseError(head.loc.line, head.loc.column, {"'test'", "'goal'", "'budget'"}, describe(head));
            if (head.text == "test") {
                shift();
                const Token name = expect_token(Tok::Ident);
                if (is_reserved(name.text))
                    throw ParseError(name.loc.line, name.loc.column, {"identifier"}, describe(name));
                for (const auto& [existing, p] : spec.tests)
                    if (existing == name.text)
                        throw Error(Errc::DuplicateTest, "test '" + name.text + "' declared twice");
                const Token kind = expect_token(Tok::Ident);
                if (kind.text == "terminates_at") {
                    const Token steps = expect_token(Tok::Integer);
                    const std::uint64_t value = parse_integer(steps);
                    if (value == 0)
                        throw ParseError(steps.loc.line, steps.loc.column, {"positive integer"}, describe(steps));
                    spec.tests.emplace_back(name.text, TestProcess::terminating(value, name.text));
                } else if (kind.text == "diverges") {
                    spec.tests.emplace_back(name.text, TestProcess::diverging(name.text));
                } else {
                    throw ParseError(kind.loc.line, kind.loc.column, {"'terminates_at'", "'diverges'"},
                                     describe(kind));
                }
                expect(Tok::Semi);
            } else if (head.text == "goal") {
                if (saw_goal) duplicate_section(head);
                saw_goal = true;
                shift();
                const Token kind = expect_token(Tok::Ident);
                if (kind.text == "conj")
                    spec.goal = GoalKind::Conjunction;
                else if (kind.text == "dovetail")
                    spec.goal = GoalKind::Dovetail;
                else
                    throw ParseError(kind.loc.line, kind.loc.column, {"'conj'", "'dovetail'"}, describe(kind));
                expect(Tok::LParen);
                if (current_.kind != Tok::RParen) {
                    goal_name_locs.push_back(current_.loc);
                    spec.goal_tests.push_back(expect_plain_ident());
                    while (accept(Tok::Comma)) {
                        goal_name_locs.push_back(current_.loc);
                        spec.goal_tests.push_back(expect_plain_ident());
                    }
                }
                expect(Tok::RParen);
                expect(Tok::Semi);
            } else if (head.text == "budget") {
                if (saw_budget) duplicate_section(head);
                saw_budget = true;
                shift();
                spec.budget = parse_integer(expect_token(Tok::Integer));
                expect(Tok::Semi);
            } else {
                throw ParseError(head.loc.line, head.loc.column, {"'test'", "'goal'", "'budget'"}, describe(head));
            }
        }
        if (!saw_goal)
            throw ParseError(current_.loc.line, current_.loc.column, {"'goal'"}, "end of input");
        if (!saw_budget)
            throw ParseError(current_.loc.line, current_.loc.column, {"'budget'"}, "end of input");
        for (std::size_t i = 0; i < spec.goal_tests.size(); ++i) {
            bool known = false;
            for (const auto& [n, p] : spec.tests) known |= n == spec.goal_tests[i];
            if (!known)
                throw Error(Errc::UnknownTest, "goal references undeclared test '" + spec.goal_tests[i] + "' at " +
                                                   std::to_string(goal_name_locs[i].line) + ":" +
                                                   std::to_string(goal_name_locs[i].column));
        }
        return spec;
    }

private:
    void shift() { current_ = lexer_.next(); }

    bool accept(Tok kind) {
        if (current_.kind != kind) return false;
        shift();
        return true;
    }

    Token expect_token(Tok kind) {
        if (current_.kind != kind)
            throw ParseError(current_.loc.line, current_.loc.column, {token_name(kind)}, describe(current_));
        Token t = current_;
        shift();
        return t;
    }

    void expect(Tok kind) { expect_token(kind); }

    void expect_keyword(std::string_view word) {
        if (current_.kind != Tok::Ident || current_.text != word)
            throw ParseError(current_.loc.line, current_.loc.column, {"'" + std::string(word) + "'"},
                             describe(current_));
        shift();
    }

    std::string expect_plain_ident() {
        const Token t = expect_token(Tok::Ident);
        if (is_reserved(t.text))
            throw ParseError(t.loc.line, t.loc.column, {"identifier"}, describe(t));
        return t.text;
    }

    [[noreturn]] void duplicate_section(const Token& t) {
        throw Error(Errc::DuplicateSection, "section '" + t.text + "' declared twice at " +
                                                std::to_string(t.loc.line) + ":" + std::to_string(t.loc.column));
    }

    bool at_section_boundary() const {
        if (current_.kind == Tok::RBrace || current_.kind == Tok::End) return true;
        return current_.kind == Tok::Ident &&
               (current_.text == "constraints" || current_.text == "basis" || current_.text == "actual");
    }

    static std::uint64_t parse_integer(const Token& t) {
        std::uint64_t value = 0;
        for (char c : t.text) {
            if (value > (UINT64_MAX - static_cast<std::uint64_t>(c - '0')) / 10)
                throw ParseError(t.loc.line, t.loc.column, {"integer in range"}, "'" + t.text + "'");
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return value;
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::Ident || t.kind == Tok::Integer) return "'" + t.text + "'";
        return token_name(t.kind);
    }

    std::pair<std::string, bool> parse_actual_entry() {
        const std::string atom = expect_plain_ident();
        expect(Tok::Equal);
        const Token value = expect_token(Tok::Ident);
        if (value.text == "T") return {atom, true};
        if (value.text == "F") return {atom, false};
        throw ParseError(value.loc.line, value.loc.column, {"'T'", "'F'"}, describe(value));
    }

    ExprPtr parse_expr(int depth = 0) {
        if (depth > 512)
            throw ParseError(current_.loc.line, current_.loc.column, {"shallower expression"},
                             "nesting deeper than 512");
        ExprPtr lhs = parse_or(depth);
        if (current_.kind == Tok::Arrow) {
            const SourceLoc loc = current_.loc;
            shift();
            return Expr::make_implies(std::move(lhs), parse_expr(depth + 1), loc);  // right-associative
        }
        return lhs;
    }

    ExprPtr parse_or(int depth) {
        ExprPtr lhs = parse_and(depth);
        while (current_.kind == Tok::Pipe) {
            const SourceLoc loc = current_.loc;
            shift();
            lhs = Expr::make_or(std::move(lhs), parse_and(depth), loc);
        }
        return lhs;
    }

    ExprPtr parse_and(int depth) {
        ExprPtr lhs = parse_unary(depth);
        while (current_.kind == Tok::Amp) {
            const SourceLoc loc = current_.loc;
            shift();
            lhs = Expr::make_and(std::move(lhs), parse_unary(depth), loc);
        }
        return lhs;
    }

    ExprPtr parse_unary(int depth) {
        if (depth > 512)
            throw ParseError(current_.loc.line, current_.loc.column, {"shallower expression"},
                             "nesting deeper than 512");
        if (current_.kind == Tok::Bang) {
            const SourceLoc loc = current_.loc;
            shift();
            return Expr::make_not(parse_unary(depth + 1), loc);
        }
        return parse_primary(depth);
    }

    ExprPtr parse_primary(int depth) {
        const Token t = current_;
        switch (t.kind) {
            case Tok::LParen: {
                shift();
                ExprPtr inner = parse_expr(depth + 1);
                expect(Tok::RParen);
                return inner;
            }
            case Tok::Ident:
                shift();
                if (t.text == "true") return Expr::make_true(t.loc);
                if (t.text == "false") return Expr::make_false(t.loc);
                if (is_reserved(t.text))
                    throw ParseError(t.loc.line, t.loc.column, {"identifier", "'('", "'!'"}, describe(t));
                return Expr::make_atom(t.text, t.loc);
            default:
                throw ParseError(t.loc.line, t.loc.column, {"identifier", "'true'", "'false'", "'('", "'!'"},
                                 describe(t));
        }
    }

    static void validate(const ContextSpec& spec) {
        for (std::size_t i = 0; i < spec.atoms.size(); ++i)
            for (std::size_t j = i + 1; j < spec.atoms.size(); ++j)
                if (spec.atoms[i] == spec.atoms[j])
                    throw Error(Errc::DuplicateAtom, "duplicate atom '" + spec.atoms[i] + "'");
        for (const auto& e : spec.constraints) check_atoms(spec, *e);
        for (const auto& e : spec.basis) check_atoms(spec, *e);
        std::vector<std::string_view> seen;
        for (const auto& [atom, value] : spec.actual) {
            if (std::find(spec.atoms.begin(), spec.atoms.end(), atom) == spec.atoms.end())
                throw Error(Errc::UnknownAtom, "unknown atom '" + atom + "' in actual");
            if (std::find(seen.begin(), seen.end(), atom) != seen.end())
                throw Error(Errc::DuplicateAtom, "atom '" + atom + "' assigned twice in actual");
            seen.push_back(atom);
        }
    }

    static void check_atoms(const ContextSpec& spec, const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Atom:
                if (std::find(spec.atoms.begin(), spec.atoms.end(), e.atom) == spec.atoms.end())
                    throw Error(Errc::UnknownAtom,
                                "unknown atom '" + e.atom + "' at " + std::to_string(e.loc.line) + ":" +
                                    std::to_string(e.loc.column));
                return;
            case Expr::Kind::True:
            case Expr::Kind::False: return;
            case Expr::Kind::Not: check_atoms(spec, *e.lhs); return;
            default:
                check_atoms(spec, *e.lhs);
                check_atoms(spec, *e.rhs);
                return;
        }
    }

    Lexer lexer_;
    Token current_{Tok::End, "", {}};
};

}  // namespace detail

/// Parses a `.exd` document. Identifiers in expressions must resolve to
/// declared atoms.
inline ContextSpec parse_spec(std::string_view text) { return detail::Parser(text).parse_context_document(); }

/// Parses a standalone statement expression (as passed to CLI commands).
inline ExprPtr parse_expression(std::string_view text) { return detail::Parser(text).parse_expression_document(); }

/// Parses a scenario document for the simulator.
inline ScenarioSpec parse_scenario(std::string_view text) { return detail::Parser(text).parse_scenario_document(); }

/// Canonical rendering; parsing the output reproduces the spec structurally.
inline std::string print_spec(const ContextSpec& spec) {
    std::string out = "context " + spec.name + " {\n";
    out += "  atoms: ";
    for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        if (i) out += ", ";
        out += spec.atoms[i];
    }
    out += ";\n";
    if (!spec.constraints.empty()) {
        out += "  constraints: ";
        for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
            if (i) out += " ";
            out += to_string(spec.constraints[i]) + ";";
        }
        out += "\n";
    }
    if (!spec.basis.empty()) {
        out += "  basis: ";
        for (std::size_t i = 0; i < spec.basis.size(); ++i) {
            if (i) out += ", ";
            out += to_string(spec.basis[i]);
        }
        out += ";\n";
    }
    if (!spec.actual.empty()) {
        // Canonical order: atom declaration order.
        std::vector<std::pair<std::string, bool>> ordered;
        for (const auto& atom : spec.atoms)
            for (const auto& [name, value] : spec.actual)
                if (name == atom) ordered.emplace_back(name, value);
        out += "  actual: ";
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            if (i) out += ", ";
            out += ordered[i].first + " = " + (ordered[i].second ? "T" : "F");
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

/// Structural equality of parsed documents; `actual` compares as a map.
inline bool structurally_equal(const ContextSpec& a, const ContextSpec& b) {
    if (a.name != b.name || a.atoms != b.atoms) return false;
    if (a.constraints.size() != b.constraints.size() || a.basis.size() != b.basis.size()) return false;
    for (std::size_t i = 0; i < a.constraints.size(); ++i)
        if (!structurally_equal(a.constraints[i], b.constraints[i])) return false;
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        if (!structurally_equal(a.basis[i], b.basis[i])) return false;
    std::map<std::string, bool> ma(a.actual.begin(), a.actual.end()), mb(b.actual.begin(), b.actual.end());
    return ma == mb;
}

/// Builds the context a parsed document describes.
inline ContextPtr build_context(const ContextSpec& spec, std::size_t atom_cap = kDefaultAtomCap) {
    return Context::build(spec.atoms, spec.constraints, spec.actual, atom_cap);
}

/// Builds the basis a parsed document declares; EmptyBasis when it has none.
inline Basis build_basis(const ContextSpec& spec, const ContextPtr& ctx) {
    if (spec.basis.empty()) fail(Errc::EmptyBasis, "document '" + spec.name + "' declares no basis");
    std::vector<Statement> members;
    members.reserve(spec.basis.size());
    for (const auto& e : spec.basis) members.push_back(eval_statement(ctx, e));
    return Basis::of(ctx, std::move(members));
}

}  // namespace expdomain
