#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expdomain/bitset.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/expr.hpp"

namespace expdomain {

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// Default ceiling on atom count; 2^N assignment vectors are materialized.
inline constexpr std::size_t kDefaultAtomCap = 20;

// Hard limit regardless of caller-supplied cap: beyond this the assignment
// space itself is unreasonable to materialize.
inline constexpr std::size_t kMaxAtoms = 30;

/// A finite universe of discourse: named atoms plus the set of assignments
/// not ruled out by the declared constraints. An assignment is encoded as an
/// integer whose bit i is the truth value of atom i. Immutable once built.
class Context {
public:
    /// Admissible assignments = those satisfying every constraint.
    static ContextPtr build(std::vector<std::string> atoms, const std::vector<ExprPtr>& constraints,
                            const std::vector<std::pair<std::string, bool>>& actual = {},
                            std::size_t atom_cap = kDefaultAtomCap) {
        auto ctx = make(std::move(atoms), atom_cap);
        Bitset admissible = Bitset::ones(ctx->assignment_space());
        for (const auto& constraint : constraints) admissible &= ctx->satisfying_set(*constraint);
        ctx->finish(std::move(admissible), actual);
        return ctx;
    }

    /// Bypasses constraint expressions: the admissible set is given directly.
    static ContextPtr from_admissible(std::vector<std::string> atoms, Bitset admissible,
                                      const std::vector<std::pair<std::string, bool>>& actual = {},
                                      std::size_t atom_cap = kDefaultAtomCap) {
        auto ctx = make(std::move(atoms), atom_cap);
        if (admissible.size() != ctx->assignment_space())
            fail(Errc::EmptyUniverse, "admissible set has wrong width for this atom list");
        ctx->finish(std::move(admissible), actual);
        return ctx;
    }

    const std::vector<std::string>& atoms() const { return atoms_; }
    std::size_t atom_count() const { return atoms_.size(); }

    std::size_t atom_index(std::string_view name) const {
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            if (atoms_[i] == name) return i;
        fail(Errc::UnknownAtom, "unknown atom '" + std::string(name) + "'");
    }

    bool has_atom(std::string_view name) const {
        for (const auto& a : atoms_)
            if (a == name) return true;
        return false;
    }

    /// Total number of assignment vectors, 2^N.
    std::size_t assignment_space() const { return std::size_t{1} << atoms_.size(); }

    const Bitset& admissible() const { return admissible_; }
    std::size_t admissible_count() const { return admissible_.count(); }

    /// The designated truth assignment, if one was declared.
    std::optional<std::uint32_t> actual() const { return actual_; }

    static bool assignment_value(std::uint32_t assignment, std::size_t atom) {
        return (assignment >> atom) & 1u;
    }

    /// Assignments of the full 2^N space satisfying `e`, ignoring constraints.
    Bitset satisfying_set(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::Atom: return atom_mask(atom_index_at(e));
            case Expr::Kind::True: return Bitset::ones(assignment_space());
            case Expr::Kind::False: return Bitset::zeros(assignment_space());
            case Expr::Kind::Not: return satisfying_set(*e.lhs).complement_in(Bitset::ones(assignment_space()));
            case Expr::Kind::And: return satisfying_set(*e.lhs) & satisfying_set(*e.rhs);
            case Expr::Kind::Or: return satisfying_set(*e.lhs) | satisfying_set(*e.rhs);
            case Expr::Kind::Implies:
                return satisfying_set(*e.lhs).complement_in(Bitset::ones(assignment_space())) |
                       satisfying_set(*e.rhs);
        }
        fail(Errc::UnknownAtom, "malformed expression node");
    }

    /// Mask of assignments where atom i is true.
    Bitset atom_mask(std::size_t i) const {
        Bitset mask(assignment_space());
        const std::size_t words = (assignment_space() + 63) >> 6;
        if (i < 6) {
            std::uint64_t word = 0;
            for (std::size_t b = 0; b < 64; ++b)
                if ((b >> i) & 1u) word |= std::uint64_t{1} << b;
            for (std::size_t w = 0; w < words; ++w) mask.set_word(w, word);
        } else {
            for (std::size_t w = 0; w < words; ++w)
                if ((w >> (i - 6)) & 1u) mask.set_word(w, ~std::uint64_t{0});
        }
        return mask;
    }

private:
    Context() = default;

    static std::shared_ptr<Context> make(std::vector<std::string> atoms, std::size_t atom_cap) {
        auto ctx = std::shared_ptr<Context>(new Context());
        if (atoms.size() > atom_cap || atoms.size() > kMaxAtoms)
            fail(Errc::AtomCapExceeded, "atom count " + std::to_string(atoms.size()) +
                                            " exceeds cap " + std::to_string(std::min(atom_cap, kMaxAtoms)));
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                if (atoms[i] == atoms[j]) fail(Errc::DuplicateAtom, "duplicate atom '" + atoms[i] + "'");
        ctx->atoms_ = std::move(atoms);
        return ctx;
    }

    void finish(Bitset admissible, const std::vector<std::pair<std::string, bool>>& actual) {
        if (admissible.none())
            fail(Errc::EmptyUniverse, "constraints are jointly unsatisfiable: no consistent truth assignment");
        admissible_ = std::move(admissible);
        if (!actual.empty()) {
            std::vector<bool> seen(atoms_.size(), false);
            std::uint32_t index = 0;
            for (const auto& [name, value] : actual) {
                const std::size_t i = atom_index(name);
                if (seen[i]) fail(Errc::DuplicateAtom, "atom '" + name + "' assigned twice in actual");
                seen[i] = true;
                if (value) index |= std::uint32_t{1} << i;
            }
            for (std::size_t i = 0; i < atoms_.size(); ++i)
                if (!seen[i]) fail(Errc::InvalidActual, "actual assignment missing atom '" + atoms_[i] + "'");
            if (!admissible_.test(index))
                fail(Errc::InvalidActual, "actual assignment violates the constraints");
            actual_ = index;
        }
    }

    std::size_t atom_index_at(const Expr& e) const {
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            if (atoms_[i] == e.atom) return i;
        std::string where = e.loc.line > 0 ? " at " + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) : "";
        fail(Errc::UnknownAtom, "unknown atom '" + e.atom + "'" + where);
    }

    std::vector<std::string> atoms_;
    Bitset admissible_;
    std::optional<std::uint32_t> actual_;
};

}  // namespace expdomain
