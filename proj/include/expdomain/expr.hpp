#pragma once

#include <memory>
#include <string>
#include <utility>

namespace expdomain {

struct SourceLoc {
    int line = 0;  // 1-based; 0 means synthesized
    int column = 0;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Propositional expression tree. Implication is syntactic sugar kept in the
/// tree so documents round-trip; evaluation treats `a -> b` as `!a | b`.
class Expr {
public:
    enum class Kind { Atom, True, False, Not, And, Or, Implies };

    Kind kind;
    std::string atom;  // Kind::Atom only
    ExprPtr lhs;       // Not: operand; binary: left
    ExprPtr rhs;       // binary: right
    SourceLoc loc;

    static ExprPtr make_atom(std::string name, SourceLoc loc = {}) {
        return node(Kind::Atom, std::move(name), nullptr, nullptr, loc);
    }
    static ExprPtr make_true(SourceLoc loc = {}) { return node(Kind::True, "", nullptr, nullptr, loc); }
    static ExprPtr make_false(SourceLoc loc = {}) { return node(Kind::False, "", nullptr, nullptr, loc); }
    static ExprPtr make_not(ExprPtr operand, SourceLoc loc = {}) {
        return node(Kind::Not, "", std::move(operand), nullptr, loc);
    }
    static ExprPtr make_and(ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {}) {
        return node(Kind::And, "", std::move(lhs), std::move(rhs), loc);
    }
    static ExprPtr make_or(ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {}) {
        return node(Kind::Or, "", std::move(lhs), std::move(rhs), loc);
    }
    static ExprPtr make_implies(ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {}) {
        return node(Kind::Implies, "", std::move(lhs), std::move(rhs), loc);
    }

private:
    static ExprPtr node(Kind kind, std::string atom, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->atom = std::move(atom);
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        e->loc = loc;
        return e;
    }
};

/// Tree equality ignoring source locations.
inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Atom: return a.atom == b.atom;
        case Expr::Kind::True:
        case Expr::Kind::False: return true;
        case Expr::Kind::Not: return structurally_equal(*a.lhs, *b.lhs);
        default: return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    return structurally_equal(*a, *b);
}

namespace detail {

// Precedence: -> (1, right) < | (2, left) < & (3, left) < ! (4) < primary (5).
inline int precedence(Expr::Kind kind) {
    switch (kind) {
        case Expr::Kind::Implies: return 1;
        case Expr::Kind::Or: return 2;
        case Expr::Kind::And: return 3;
        case Expr::Kind::Not: return 4;
        default: return 5;
    }
}

inline void print_expr(const Expr& e, std::string& out) {
    const int prec = precedence(e.kind);
    auto child = [&](const Expr& c, bool needs_parens) {
        if (needs_parens) {
            out += '(';
            print_expr(c, out);
            out += ')';
        } else {
            print_expr(c, out);
        }
    };
    switch (e.kind) {
        case Expr::Kind::Atom: out += e.atom; return;
        case Expr::Kind::True: out += "true"; return;
        case Expr::Kind::False: out += "false"; return;
        case Expr::Kind::Not:
            out += '!';
            child(*e.lhs, precedence(e.lhs->kind) < prec);
            return;
        case Expr::Kind::Implies:
            // Right-associative.
            child(*e.lhs, precedence(e.lhs->kind) <= prec);
            out += " -> ";
            child(*e.rhs, precedence(e.rhs->kind) < prec);
            return;
        case Expr::Kind::And:
        case Expr::Kind::Or:
            child(*e.lhs, precedence(e.lhs->kind) < prec);
            out += e.kind == Expr::Kind::And ? " & " : " | ";
            child(*e.rhs, precedence(e.rhs->kind) <= prec);
            return;
    }
}

}  // namespace detail

/// Canonical rendering with minimal parentheses; parsing the result yields a
/// structurally equal tree.
inline std::string to_string(const Expr& e) {
    std::string out;
    detail::print_expr(e, out);
    return out;
}

inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

}  // namespace expdomain
