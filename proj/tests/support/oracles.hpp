#pragma once

// Brute-force reference implementations, deliberately independent of the
// library's bitset-parallel code paths: everything here walks assignments
// one at a time or manipulates sets of plain vector<bool>.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "expdomain/expdomain.hpp"

namespace exdtest {

using namespace expdomain;

/// Recursive per-assignment evaluation of an expression.
inline bool oracle_eval(const Expr& e, std::uint32_t assignment, const std::vector<std::string>& atoms) {
    switch (e.kind) {
        case Expr::Kind::Atom: {
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (atoms[i] == e.atom) return (assignment >> i) & 1u;
            throw std::logic_error("oracle: unknown atom " + e.atom);
        }
        case Expr::Kind::True: return true;
        case Expr::Kind::False: return false;
        case Expr::Kind::Not: return !oracle_eval(*e.lhs, assignment, atoms);
        case Expr::Kind::And: return oracle_eval(*e.lhs, assignment, atoms) && oracle_eval(*e.rhs, assignment, atoms);
        case Expr::Kind::Or: return oracle_eval(*e.lhs, assignment, atoms) || oracle_eval(*e.rhs, assignment, atoms);
        case Expr::Kind::Implies:
            return !oracle_eval(*e.lhs, assignment, atoms) || oracle_eval(*e.rhs, assignment, atoms);
    }
    return false;
}

/// Admissible assignments satisfying the expression, one by one.
inline std::vector<std::uint32_t> oracle_satisfying(const ContextPtr& ctx, const Expr& e) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < ctx->assignment_space(); ++a)
        if (ctx->admissible().test(a) && oracle_eval(e, a, ctx->atoms())) out.push_back(a);
    return out;
}

/// Count of admissible assignments computed by exhaustive constraint checks.
inline std::size_t oracle_admissible_count(const std::vector<std::string>& atoms,
                                           const std::vector<ExprPtr>& constraints) {
    std::size_t count = 0;
    for (std::uint32_t a = 0; a < (std::uint32_t{1} << atoms.size()); ++a) {
        bool ok = true;
        for (const auto& c : constraints) ok = ok && oracle_eval(*c, a, atoms);
        if (ok) ++count;
    }
    return count;
}

/// Definitional independence of a pair: for each of the 16 binary truth
/// functions, the possibilities of the combination must equal the function's
/// image over the product of the component possibilities.
inline bool oracle_independent_pair(const Statement& s1, const Statement& s2) {
    const ContextPtr& ctx = s1.context();
    auto poss_values = [&](const Statement& s) {
        std::set<bool> values;
        ctx->admissible().for_each_set([&](std::size_t a) { values.insert(s.truth_at(static_cast<std::uint32_t>(a))); });
        return values;
    };
    const std::set<bool> p1 = poss_values(s1), p2 = poss_values(s2);
    for (unsigned table = 0; table < 16; ++table) {
        auto f = [&](bool x, bool y) { return (table >> ((x ? 1u : 0u) | (y ? 2u : 0u))) & 1u; };
        std::set<bool> combined_poss;
        ctx->admissible().for_each_set([&](std::size_t a) {
            combined_poss.insert(f(s1.truth_at(static_cast<std::uint32_t>(a)), s2.truth_at(static_cast<std::uint32_t>(a))));
        });
        std::set<bool> image;
        for (bool x : p1)
            for (bool y : p2) image.insert(f(x, y));
        if (combined_poss != image) return false;
    }
    return true;
}

using PlainSet = std::vector<bool>;  // indexed by assignment

inline PlainSet to_plain(const Bitset& b) {
    PlainSet out(b.size(), false);
    b.for_each_set([&](std::size_t i) { out[i] = true; });
    return out;
}

inline PlainSet plain_and(const PlainSet& a, const PlainSet& b) {
    PlainSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
}
inline PlainSet plain_or(const PlainSet& a, const PlainSet& b) {
    PlainSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
    return out;
}
inline PlainSet plain_complement(const PlainSet& a, const PlainSet& universe) {
    PlainSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = universe[i] && !a[i];
    return out;
}

/// Naive repeated-pass closure over plain sets; no worklist, no hashing.
inline std::set<PlainSet> oracle_closure(const std::vector<PlainSet>& seed, const PlainSet& universe,
                                         bool with_complement) {
    std::set<PlainSet> members(seed.begin(), seed.end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<PlainSet> snapshot(members.begin(), members.end());
        for (const auto& a : snapshot) {
            if (with_complement) changed |= members.insert(plain_complement(a, universe)).second;
            for (const auto& b : snapshot) {
                changed |= members.insert(plain_and(a, b)).second;
                changed |= members.insert(plain_or(a, b)).second;
            }
        }
    }
    return members;
}

/// The theoretical/experimental closures recomputed the slow way.
inline std::set<PlainSet> oracle_domain_sets(const Basis& basis, bool with_complement) {
    const ContextPtr& ctx = basis.context;
    std::vector<PlainSet> seed;
    seed.push_back(PlainSet(ctx->assignment_space(), false));
    seed.push_back(to_plain(ctx->admissible()));
    for (const auto& s : basis.members) seed.push_back(to_plain(s.truth_set()));
    return oracle_closure(seed, to_plain(ctx->admissible()), with_complement);
}

}  // namespace exdtest
