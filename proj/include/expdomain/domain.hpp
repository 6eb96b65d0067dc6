#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "expdomain/bitset.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/statement.hpp"

namespace expdomain {

/// Default ceiling on materialized closure members.
inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 16;

/// A finite list of statements declared verifiable; generates a domain.
struct Basis {
    ContextPtr context;
    std::vector<Statement> members;

    static Basis of(ContextPtr context, std::vector<Statement> members) {
        if (members.empty()) fail(Errc::EmptyBasis, "a basis needs at least one statement");
        for (const auto& s : members)
            if (s.context() != context) fail(Errc::MixedContexts, "basis statement from a different context");
        return Basis{std::move(context), std::move(members)};
    }

    std::size_t size() const { return members.size(); }
};

namespace detail {

// Worklist fixpoint over canonical truth sets. Every unordered pair of
// members (including self-pairs) is combined once; results are deduplicated
// by set equality.
inline std::vector<Bitset> close_sets(std::vector<Bitset> seed, bool with_complement, const Bitset& universe,
                                      std::size_t cap) {
    std::vector<Bitset> members;
    std::unordered_set<Bitset, BitsetHash> index;
    auto add = [&](Bitset s) {
        if (index.insert(s).second) {
            if (members.size() >= cap)
                fail(Errc::ClosureCapExceeded,
                     "closure exceeds " + std::to_string(cap) + " members; raise the cap or use membership queries");
            members.push_back(std::move(s));
        }
    };
    for (auto& s : seed) add(std::move(s));
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (with_complement) add(members[i].complement_in(universe));
        // members may grow while we pair; later entries pair with i when
        // their own turn comes.
        const std::size_t snapshot = i + 1;
        for (std::size_t j = 0; j < snapshot; ++j) {
            add(members[i] & members[j]);
            add(members[i] | members[j]);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace detail

/// Closure of a basis under pairwise conjunction and disjunction, with the
/// tautology and the contradiction included explicitly.
class ExperimentalDomain {
public:
    ExperimentalDomain(Basis basis, std::vector<Statement> members)
        : basis_(std::move(basis)), members_(std::move(members)) {
        for (std::size_t i = 0; i < members_.size(); ++i) index_.emplace(members_[i].truth_set(), i);
    }

    const Basis& basis() const { return basis_; }
    const ContextPtr& context() const { return basis_.context; }
    const std::vector<Statement>& members() const { return members_; }

    bool contains(const Statement& s) const {
        if (s.context() != basis_.context) fail(Errc::MixedContexts, "statement from a different context");
        return index_.contains(s.truth_set());
    }

private:
    Basis basis_;
    std::vector<Statement> members_;
    std::unordered_map<Bitset, std::size_t, BitsetHash> index_;
};

/// The experimental domain closed additionally under negation: the Boolean
/// subalgebra generated by the basis.
class TheoreticalDomain {
public:
    TheoreticalDomain(ExperimentalDomain experimental, std::vector<Statement> members)
        : experimental_(std::move(experimental)), members_(std::move(members)) {
        for (std::size_t i = 0; i < members_.size(); ++i) index_.emplace(members_[i].truth_set(), i);
    }

    const ExperimentalDomain& experimental() const { return experimental_; }
    const Basis& basis() const { return experimental_.basis(); }
    const ContextPtr& context() const { return experimental_.context(); }
    const std::vector<Statement>& members() const { return members_; }

    bool contains(const Statement& s) const {
        if (s.context() != context()) fail(Errc::MixedContexts, "statement from a different context");
        return index_.contains(s.truth_set());
    }

private:
    ExperimentalDomain experimental_;
    std::vector<Statement> members_;
    std::unordered_map<Bitset, std::size_t, BitsetHash> index_;
};

/// Fixpoint closure of the basis into its experimental and theoretical
/// domains. Throws ClosureCapExceeded when either closure outgrows `cap`.
inline TheoreticalDomain build_domain(const Basis& basis, std::size_t cap = kDefaultClosureCap) {
    const ContextPtr& ctx = basis.context;
    std::vector<Bitset> seed;
    seed.push_back(Bitset::zeros(ctx->assignment_space()));  // contradiction
    seed.push_back(ctx->admissible());                       // tautology
    for (const auto& s : basis.members) seed.push_back(s.truth_set());

    std::vector<Bitset> experimental_sets = detail::close_sets(seed, false, ctx->admissible(), cap);
    std::vector<Bitset> theoretical_sets = detail::close_sets(experimental_sets, true, ctx->admissible(), cap);

    auto to_statements = [&](std::vector<Bitset>& sets) {
        std::vector<Statement> out;
        out.reserve(sets.size());
        for (auto& s : sets) out.push_back(Statement::from_truth_set(ctx, std::move(s)));
        return out;
    };
    ExperimentalDomain experimental(basis, to_statements(experimental_sets));
    return TheoreticalDomain(std::move(experimental), to_statements(theoretical_sets));
}

enum class StatementClass : unsigned char { Decidable, VerifiableOnly, TheoreticalOnly, Outside };

inline const char* to_string(StatementClass c) {
    switch (c) {
        case StatementClass::Decidable: return "decidable";
        case StatementClass::VerifiableOnly: return "verifiable-only";
        case StatementClass::TheoreticalOnly: return "theoretical-only";
        case StatementClass::Outside: return "outside";
    }
    return "?";
}

inline StatementClass classify(const TheoreticalDomain& tdom, const Statement& s) {
    const ExperimentalDomain& edom = tdom.experimental();
    const bool stmt_in = edom.contains(s);
    const bool negation_in = edom.contains(negate(s));
    if (stmt_in && negation_in) return StatementClass::Decidable;
    if (stmt_in) return StatementClass::VerifiableOnly;
    if (tdom.contains(s)) return StatementClass::TheoreticalOnly;
    return StatementClass::Outside;
}

/// A subset of a possibility space, by possibility id.
struct PossibilitySubset {
    Bitset members;

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        members.for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    friend bool operator==(const PossibilitySubset&, const PossibilitySubset&) = default;
};

/// The possibilities of a domain: the statements that settle every basis
/// member, labeled by the basis truth vector they force. Ordered by label
/// (false before true, first basis member most significant).
class PossibilitySpace {
public:
    PossibilitySpace(Basis basis, std::vector<Statement> possibilities, std::vector<std::vector<bool>> labels)
        : basis_(std::move(basis)), possibilities_(std::move(possibilities)), labels_(std::move(labels)) {
        for (std::size_t i = 0; i < possibilities_.size(); ++i)
            by_truth_set_.emplace(possibilities_[i].truth_set(), i);
    }

    const Basis& basis() const { return basis_; }
    const ContextPtr& context() const { return basis_.context; }
    std::size_t size() const { return possibilities_.size(); }
    const std::vector<Statement>& possibilities() const { return possibilities_; }
    const Statement& possibility(std::size_t id) const { return possibilities_[id]; }
    const std::vector<bool>& label_of(std::size_t id) const { return labels_[id]; }

    std::string label_string(std::size_t id) const {
        std::string out;
        for (bool v : labels_[id]) out += v ? 'T' : 'F';
        return out;
    }

    /// Id of a possibility given as a statement; UnknownPossibility if the
    /// statement is not one of this space's possibilities.
    std::size_t id_of(const Statement& p) const {
        if (p.context() != context()) fail(Errc::MixedContexts, "possibility from a different context");
        auto it = by_truth_set_.find(p.truth_set());
        if (it == by_truth_set_.end()) fail(Errc::UnknownPossibility, "statement is not a possibility of this space");
        return it->second;
    }

    PossibilitySubset empty_subset() const { return {Bitset::zeros(size())}; }
    PossibilitySubset full_subset() const { return {Bitset::ones(size())}; }

private:
    Basis basis_;
    std::vector<Statement> possibilities_;
    std::vector<std::vector<bool>> labels_;
    std::unordered_map<Bitset, std::size_t, BitsetHash> by_truth_set_;
};

/// Groups admissible assignments by the truth vector of the basis members;
/// each nonempty group is one possibility.
inline PossibilitySpace possibilities(const Basis& basis) {
    const ContextPtr& ctx = basis.context;
    std::map<std::vector<bool>, Bitset> groups;
    ctx->admissible().for_each_set([&](std::size_t a) {
        std::vector<bool> key;
        key.reserve(basis.members.size());
        for (const auto& s : basis.members) key.push_back(s.truth_at(static_cast<std::uint32_t>(a)));
        auto [it, inserted] = groups.try_emplace(std::move(key), Bitset::zeros(ctx->assignment_space()));
        it->second.set(a);
    });
    std::vector<Statement> classes;
    std::vector<std::vector<bool>> labels;
    classes.reserve(groups.size());
    labels.reserve(groups.size());
    for (auto& [label, truth_set] : groups) {
        classes.push_back(Statement::from_truth_set(ctx, std::move(truth_set)));
        labels.push_back(label);
    }
    return PossibilitySpace(basis, std::move(classes), std::move(labels));
}

inline PossibilitySpace possibilities(const ExperimentalDomain& domain) { return possibilities(domain.basis()); }

/// The label of one possibility: the basis truth values it forces.
inline std::vector<bool> label(const PossibilitySpace& space, const Statement& p) {
    return space.label_of(space.id_of(p));
}

/// Literal definition of a possibility, used as an independent check against
/// possibilities(): non-contradictory, and for every theoretical member
/// either narrower than it or incompatible with it.
inline bool possibility_oracle(const TheoreticalDomain& tdom, const Statement& s) {
    if (s.context() != tdom.context()) fail(Errc::MixedContexts, "statement from a different context");
    if (s.is_contradiction()) return false;
    for (const auto& member : tdom.members()) {
        if (!narrower(s, member) && compatible(s, member)) return false;
    }
    return true;
}

namespace detail {

// Minimal open neighborhood of possibility x in the topology generated by
// the basis images: intersect the basis sets whose label bit is set for x.
inline Bitset minimal_neighborhood(const PossibilitySpace& space, std::size_t x) {
    Bitset nbhd = Bitset::ones(space.size());
    const auto& lx = space.label_of(x);
    for (std::size_t b = 0; b < lx.size(); ++b) {
        if (!lx[b]) continue;
        Bitset basis_image(space.size());
        for (std::size_t p = 0; p < space.size(); ++p)
            if (space.label_of(p)[b]) basis_image.set(p);
        nbhd &= basis_image;
    }
    return nbhd;
}

}  // namespace detail

/// Membership query for the theoretical domain that never materializes the
/// closure: the truth set must be a union of possibility classes.
inline bool is_theoretical_member(const PossibilitySpace& space, const Statement& s) {
    if (s.context() != space.context()) fail(Errc::MixedContexts, "statement from a different context");
    Bitset covered = Bitset::zeros(s.context()->assignment_space());
    for (const auto& p : space.possibilities())
        if (p.truth_set().intersects(s.truth_set())) covered |= p.truth_set();
    return covered == s.truth_set();
}

/// Membership query for the experimental domain: a union of possibility
/// classes whose possibility set is open in the generated topology.
inline bool is_experimental_member(const PossibilitySpace& space, const Statement& s) {
    if (!is_theoretical_member(space, s)) return false;
    Bitset poss_set(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
        if (space.possibility(p).truth_set().intersects(s.truth_set())) poss_set.set(p);
    bool open = true;
    poss_set.for_each_set([&](std::size_t x) {
        if (!detail::minimal_neighborhood(space, x).is_subset_of(poss_set)) open = false;
    });
    return open;
}

/// The possibilities whose classes make up an experimental member's truth
/// set; their disjunction is equivalent to the statement.
inline PossibilitySubset dnf(const PossibilitySpace& space, const Statement& s) {
    if (!is_experimental_member(space, s))
        fail(Errc::NotInDomain, "statement is not a member of the experimental domain");
    Bitset out(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
        if (space.possibility(p).truth_set().is_subset_of(s.truth_set())) out.set(p);
    return {std::move(out)};
}

}  // namespace expdomain
