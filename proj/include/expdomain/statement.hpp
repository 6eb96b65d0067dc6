#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expdomain/bitset.hpp"
#include "expdomain/context.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/expr.hpp"

namespace expdomain {

/// Which truth values a statement's content permits. Never empty.
enum class PossibilitySet : unsigned char { FalseOnly, TrueOnly, Both };

inline bool allows(PossibilitySet p, bool value) {
    return p == PossibilitySet::Both || (value ? p == PossibilitySet::TrueOnly : p == PossibilitySet::FalseOnly);
}

inline const char* to_string(PossibilitySet p) {
    switch (p) {
        case PossibilitySet::FalseOnly: return "{F}";
        case PossibilitySet::TrueOnly: return "{T}";
        case PossibilitySet::Both: return "{F,T}";
    }
    return "?";
}

/// A statement over a context, identified extensionally with the set of
/// admissible assignments where it holds. Equivalent statements are equal.
class Statement {
public:
    Statement() = default;

    static Statement from_truth_set(ContextPtr context, Bitset truth_set) {
        if (!context) fail(Errc::MixedContexts, "statement requires a context");
        if (!truth_set.is_subset_of(context->admissible()))
            fail(Errc::EmptyUniverse, "truth set contains inadmissible assignments");
        return Statement(std::move(context), std::move(truth_set));
    }

    const ContextPtr& context() const { return context_; }
    const Bitset& truth_set() const { return truth_set_; }
    std::size_t truth_count() const { return truth_set_.count(); }

    bool truth_at(std::uint32_t assignment) const { return truth_set_.test(assignment); }

    bool is_tautology() const { return truth_set_ == context_->admissible(); }
    bool is_contradiction() const { return truth_set_.none(); }

    friend bool operator==(const Statement& a, const Statement& b) {
        return a.context_ == b.context_ && a.truth_set_ == b.truth_set_;
    }

private:
    Statement(ContextPtr context, Bitset truth_set)
        : context_(std::move(context)), truth_set_(std::move(truth_set)) {}

    ContextPtr context_;
    Bitset truth_set_;
};

inline Statement top(const ContextPtr& ctx) { return Statement::from_truth_set(ctx, ctx->admissible()); }
inline Statement bottom(const ContextPtr& ctx) {
    return Statement::from_truth_set(ctx, Bitset::zeros(ctx->assignment_space()));
}

/// Builds the statement denoted by an expression; its truth set is the
/// admissible assignments satisfying the expression.
inline Statement eval_statement(const ContextPtr& ctx, const Expr& expr) {
    return Statement::from_truth_set(ctx, ctx->satisfying_set(expr) & ctx->admissible());
}
inline Statement eval_statement(const ContextPtr& ctx, const ExprPtr& expr) {
    return eval_statement(ctx, *expr);
}

inline PossibilitySet poss_of(const Statement& s) {
    if (s.is_contradiction()) return PossibilitySet::FalseOnly;
    if (s.is_tautology()) return PossibilitySet::TrueOnly;
    return PossibilitySet::Both;
}

/// The truth value at the context's designated actual assignment, when one
/// exists. The algebra itself never consults this.
inline std::optional<bool> truth_value(const Statement& s) {
    const auto actual = s.context()->actual();
    if (!actual) return std::nullopt;
    return s.truth_at(*actual);
}

namespace detail {
inline void require_same_context(const Statement& a, const Statement& b) {
    if (a.context() != b.context()) fail(Errc::MixedContexts, "statements belong to different contexts");
}
}  // namespace detail

inline Statement negate(const Statement& s) {
    return Statement::from_truth_set(s.context(), s.truth_set().complement_in(s.context()->admissible()));
}

inline Statement conjoin(const Statement& a, const Statement& b) {
    detail::require_same_context(a, b);
    return Statement::from_truth_set(a.context(), a.truth_set() & b.truth_set());
}

inline Statement disjoin(const Statement& a, const Statement& b) {
    detail::require_same_context(a, b);
    return Statement::from_truth_set(a.context(), a.truth_set() | b.truth_set());
}

/// An arbitrary n-ary truth function, tabulated. Input vectors are encoded
/// as integers with bit i carrying the i-th argument.
class TruthTable {
public:
    TruthTable(std::size_t arity, std::vector<bool> outputs) : arity_(arity), outputs_(std::move(outputs)) {
        if (arity_ > 20) fail(Errc::ArityMismatch, "truth table arity capped at 20");
        if (outputs_.size() != (std::size_t{1} << arity_))
            fail(Errc::ArityMismatch, "truth table needs one output per input vector");
    }

    template <typename Fn>
    static TruthTable from_function(std::size_t arity, Fn&& fn) {
        std::vector<bool> outputs;
        outputs.reserve(std::size_t{1} << arity);
        for (std::uint32_t v = 0; v < (std::uint32_t{1} << arity); ++v) outputs.push_back(fn(v));
        return TruthTable(arity, std::move(outputs));
    }

    static TruthTable negation() { return TruthTable(1, {true, false}); }
    static TruthTable conjunction() { return TruthTable(2, {false, false, false, true}); }
    static TruthTable disjunction() { return TruthTable(2, {false, true, true, true}); }
    static TruthTable exclusive_or() { return TruthTable(2, {false, true, true, false}); }

    std::size_t arity() const { return arity_; }
    bool output(std::uint32_t inputs) const { return outputs_[inputs]; }

private:
    std::size_t arity_;
    std::vector<bool> outputs_;
};

/// The statement whose truth value is `table` applied to the given
/// statements' truth values, realized assignment-wise.
inline Statement combine(const TruthTable& table, std::span<const Statement> stmts) {
    if (stmts.empty()) fail(Errc::EmptyList, "combine requires at least one statement");
    if (table.arity() != stmts.size())
        fail(Errc::ArityMismatch, "table arity " + std::to_string(table.arity()) + " != statement count " +
                                      std::to_string(stmts.size()));
    const ContextPtr& ctx = stmts.front().context();
    for (const auto& s : stmts) detail::require_same_context(stmts.front(), s);

    std::vector<Bitset> holds, fails;
    holds.reserve(stmts.size());
    fails.reserve(stmts.size());
    for (const auto& s : stmts) {
        holds.push_back(s.truth_set());
        fails.push_back(s.truth_set().complement_in(ctx->admissible()));
    }

    Bitset result = Bitset::zeros(ctx->assignment_space());
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << stmts.size()); ++v) {
        if (!table.output(v)) continue;
        Bitset cell = ctx->admissible();
        for (std::size_t i = 0; i < stmts.size() && cell.any(); ++i)
            cell &= ((v >> i) & 1u) ? holds[i] : fails[i];
        result |= cell;
    }
    return Statement::from_truth_set(ctx, std::move(result));
}

inline Statement combine(const TruthTable& table, std::initializer_list<Statement> stmts) {
    return combine(table, std::span<const Statement>(stmts.begin(), stmts.size()));
}

inline bool equivalent(const Statement& a, const Statement& b) {
    detail::require_same_context(a, b);
    return a.truth_set() == b.truth_set();
}

/// a is narrower than b: b is true whenever a is.
inline bool narrower(const Statement& a, const Statement& b) {
    detail::require_same_context(a, b);
    return a.truth_set().is_subset_of(b.truth_set());
}

inline bool broader(const Statement& a, const Statement& b) { return narrower(b, a); }

/// Their content allows both to be true at once.
inline bool compatible(const Statement& a, const Statement& b) {
    detail::require_same_context(a, b);
    return a.truth_set().intersects(b.truth_set());
}

/// Every combination of the statements' possibilities is realized by some
/// admissible assignment (the product-realizability criterion).
inline bool independent(std::span<const Statement> stmts) {
    if (stmts.empty()) return true;
    const ContextPtr& ctx = stmts.front().context();
    for (const auto& s : stmts) detail::require_same_context(stmts.front(), s);

    std::vector<PossibilitySet> poss;
    poss.reserve(stmts.size());
    for (const auto& s : stmts) poss.push_back(poss_of(s));

    // Walk the product of the possibility sets; singleton factors are pinned.
    std::vector<bool> choice(stmts.size());
    const std::size_t n = stmts.size();
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
        if (poss[i] == PossibilitySet::Both)
            free.push_back(i);
        else
            choice[i] = poss[i] == PossibilitySet::TrueOnly;
    }
    if (free.size() > 24) fail(Errc::ArityMismatch, "independence check capped at 24 two-valued statements");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
        for (std::size_t k = 0; k < free.size(); ++k) choice[free[k]] = (bits >> k) & 1u;
        Bitset cell = ctx->admissible();
        for (std::size_t i = 0; i < n && cell.any(); ++i)
            cell &= choice[i] ? stmts[i].truth_set() : stmts[i].truth_set().complement_in(ctx->admissible());
        if (cell.none()) return false;
    }
    return true;
}

inline bool independent(std::initializer_list<Statement> stmts) {
    return independent(std::span<const Statement>(stmts.begin(), stmts.size()));
}

struct RelationReport {
    bool equivalent = false;
    bool narrower = false;
    bool broader = false;
    bool compatible = false;
    bool independent = false;
};

inline RelationReport relation(const Statement& a, const Statement& b) {
    detail::require_same_context(a, b);
    RelationReport r;
    r.narrower = narrower(a, b);
    r.broader = broader(a, b);
    r.equivalent = r.narrower && r.broader;
    r.compatible = compatible(a, b);
    r.independent = independent({a, b});
    return r;
}

}  // namespace expdomain
