#pragma once

#include <random>
#include <string>
#include <vector>

#include "expdomain/expdomain.hpp"

namespace exdtest {

using namespace expdomain;

inline std::vector<std::string> atom_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
    return names;
}

/// Random nonempty admissible set over 1..max_atoms atoms.
inline ContextPtr random_context(std::mt19937& rng, std::size_t max_atoms) {
    std::uniform_int_distribution<std::size_t> natoms(1, max_atoms);
    const std::size_t n = natoms(rng);
    const std::size_t space = std::size_t{1} << n;
    Bitset admissible(space);
    std::bernoulli_distribution keep(0.6);
    for (std::size_t a = 0; a < space; ++a)
        if (keep(rng)) admissible.set(a);
    if (admissible.none()) admissible.set(std::uniform_int_distribution<std::size_t>(0, space - 1)(rng));
    return Context::from_admissible(atom_names(n), std::move(admissible));
}

/// Random subset of the admissible assignments as a statement.
inline Statement random_statement(std::mt19937& rng, const ContextPtr& ctx) {
    Bitset truth(ctx->assignment_space());
    std::bernoulli_distribution keep(0.5);
    ctx->admissible().for_each_set([&](std::size_t a) {
        if (keep(rng)) truth.set(a);
    });
    return Statement::from_truth_set(ctx, std::move(truth));
}

inline Basis random_basis(std::mt19937& rng, const ContextPtr& ctx, std::size_t max_members) {
    std::uniform_int_distribution<std::size_t> count(1, max_members);
    std::vector<Statement> members;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) members.push_back(random_statement(rng, ctx));
    return Basis::of(ctx, std::move(members));
}

inline ExprPtr random_expr(std::mt19937& rng, const std::vector<std::string>& atoms, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
    switch (pick(rng)) {
        case 0:
            return Expr::make_atom(atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)]);
        case 1: return Expr::make_true();
        case 2: return Expr::make_false();
        case 3: return Expr::make_not(random_expr(rng, atoms, depth - 1));
        case 4: return Expr::make_and(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1));
        case 5: return Expr::make_or(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1));
        default:
            return Expr::make_implies(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1));
    }
}

inline ContextSpec random_context_spec(std::mt19937& rng) {
    ContextSpec spec;
    spec.name = "c" + std::to_string(std::uniform_int_distribution<int>(0, 999)(rng));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    spec.atoms = atom_names(n);
    const std::size_t nconstraints = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t i = 0; i < nconstraints; ++i)
        spec.constraints.push_back(random_expr(rng, spec.atoms, 4));
    const std::size_t nbasis = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t i = 0; i < nbasis; ++i) spec.basis.push_back(random_expr(rng, spec.atoms, 3));
    if (std::bernoulli_distribution(0.3)(rng)) {
        std::bernoulli_distribution value(0.5);
        for (const auto& atom : spec.atoms) spec.actual.emplace_back(atom, value(rng));
    }
    return spec;
}

}  // namespace exdtest
