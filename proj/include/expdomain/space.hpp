#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "expdomain/bitset.hpp"
#include "expdomain/domain.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/statement.hpp"

namespace expdomain {

/// Default ceiling on |X| for materializing full set families (the open
/// family can reach 2^|X| sets).
inline constexpr std::size_t kDefaultEnumerationCap = 16;

/// The natural topology on a possibility space: every open set is the image
/// of an experimental-domain member. Families are sorted canonically (subset
/// bitmask as integer, possibility 0 least significant).
struct Topology {
    std::size_t point_count = 0;
    std::vector<Bitset> subbasis;  // images of the basis members, basis order
    std::vector<Bitset> opens;
};

struct SigmaAlgebra {
    std::size_t point_count = 0;
    std::vector<Bitset> sets;
};

struct PropertyReport {
    bool is_topology = false;
    bool is_t0 = false;
    bool is_second_countable = false;
    bool is_hausdorff = false;
    bool sigma_is_borel = false;
    std::vector<bool> approx_verifiable;  // by possibility id
};

/// U: the possibilities compatible with an experimental-domain member.
inline PossibilitySubset verifiable_set(const PossibilitySpace& space, const Statement& s) {
    if (!is_experimental_member(space, s))
        fail(Errc::NotInDomain, "statement is not a member of the experimental domain");
    Bitset out(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
        if (space.possibility(p).truth_set().intersects(s.truth_set())) out.set(p);
    return {std::move(out)};
}

/// A: the possibilities compatible with a theoretical-domain member.
inline PossibilitySubset theoretical_set(const PossibilitySpace& space, const Statement& s) {
    if (!is_theoretical_member(space, s))
        fail(Errc::NotInDomain, "statement is not a member of the theoretical domain");
    Bitset out(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
        if (space.possibility(p).truth_set().intersects(s.truth_set())) out.set(p);
    return {std::move(out)};
}

namespace detail {

inline void require_enumerable(const PossibilitySpace& space, std::size_t cap) {
    if (space.size() > cap)
        fail(Errc::EnumerationCapExceeded, "possibility count " + std::to_string(space.size()) +
                                               " exceeds enumeration cap " + std::to_string(cap));
}

inline std::vector<Bitset> sorted_unique(std::vector<Bitset> family) {
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    return family;
}

// Image of a basis member as a subset of X, straight from the labels.
inline Bitset basis_image(const PossibilitySpace& space, std::size_t b) {
    Bitset out(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
        if (space.label_of(p)[b]) out.set(p);
    return out;
}

}  // namespace detail

/// Opens = all unions of finite intersections of the subbasis (the images of
/// the basis members), computed as a union-closure over the
/// intersection-closure, with the empty set and X included.
inline Topology natural_topology(const PossibilitySpace& space, std::size_t cap = kDefaultEnumerationCap) {
    detail::require_enumerable(space, cap);
    Topology top;
    top.point_count = space.size();
    for (std::size_t b = 0; b < space.basis().size(); ++b)
        top.subbasis.push_back(detail::basis_image(space, b));

    std::vector<Bitset> family;
    std::unordered_set<Bitset, BitsetHash> index;
    auto add = [&](Bitset s) {
        if (index.insert(s).second) family.push_back(std::move(s));
    };
    add(Bitset::ones(space.size()));  // empty intersection
    for (const auto& s : top.subbasis) add(s);
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) add(family[i] & family[j]);

    add(Bitset::zeros(space.size()));  // empty union
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) add(family[i] | family[j]);

    top.opens = detail::sorted_unique(std::move(family));
    return top;
}

/// Σ_X as the image of the theoretical domain under A.
inline SigmaAlgebra natural_sigma_algebra(const PossibilitySpace& space, const TheoreticalDomain& tdom,
                                          std::size_t cap = kDefaultEnumerationCap) {
    detail::require_enumerable(space, cap);
    if (tdom.context() != space.context()) fail(Errc::MixedContexts, "domain and space disagree on context");
    std::vector<Bitset> sets;
    sets.reserve(tdom.members().size());
    for (const auto& member : tdom.members()) sets.push_back(theoretical_set(space, member).members);
    SigmaAlgebra sigma;
    sigma.point_count = space.size();
    sigma.sets = detail::sorted_unique(std::move(sets));
    return sigma;
}

/// Convenience overload that materializes the theoretical domain itself.
inline SigmaAlgebra natural_sigma_algebra(const PossibilitySpace& space,
                                          std::size_t cap = kDefaultEnumerationCap,
                                          std::size_t closure_cap = kDefaultClosureCap) {
    return natural_sigma_algebra(space, build_domain(space.basis(), closure_cap), cap);
}

/// Smallest family containing the opens and closed under complement and
/// pairwise union (fixpoint).
inline SigmaAlgebra borel_of(const Topology& top) {
    const std::size_t n = top.point_count;
    const Bitset universe = Bitset::ones(n);
    std::vector<Bitset> family;
    std::unordered_set<Bitset, BitsetHash> index;
    auto add = [&](Bitset s) {
        if (index.insert(s).second) family.push_back(std::move(s));
    };
    add(Bitset::zeros(n));
    add(universe);
    for (const auto& s : top.opens) add(s);
    for (std::size_t i = 0; i < family.size(); ++i) {
        add(family[i].complement_in(universe));
        for (std::size_t j = 0; j <= i; ++j) add(family[i] | family[j]);
    }
    SigmaAlgebra sigma;
    sigma.point_count = n;
    sigma.sets = detail::sorted_unique(std::move(family));
    return sigma;
}

inline SigmaAlgebra borel_of(const SigmaAlgebra& sigma) {
    Topology as_family;
    as_family.point_count = sigma.point_count;
    as_family.opens = sigma.sets;
    return borel_of(as_family);
}

/// Axiom check for a materialized family: contains the empty set and X, and
/// is closed under pairwise intersection and pairwise union (which in a
/// finite space gives closure under all unions).
inline bool satisfies_topology_axioms(const Topology& top) {
    std::unordered_set<Bitset, BitsetHash> index(top.opens.begin(), top.opens.end());
    if (!index.contains(Bitset::zeros(top.point_count))) return false;
    if (!index.contains(Bitset::ones(top.point_count))) return false;
    for (std::size_t i = 0; i < top.opens.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (!index.contains(top.opens[i] & top.opens[j])) return false;
            if (!index.contains(top.opens[i] | top.opens[j])) return false;
        }
    return true;
}

inline bool satisfies_sigma_axioms(const SigmaAlgebra& sigma) {
    const Bitset universe = Bitset::ones(sigma.point_count);
    std::unordered_set<Bitset, BitsetHash> index(sigma.sets.begin(), sigma.sets.end());
    if (!index.contains(Bitset::zeros(sigma.point_count))) return false;
    if (!index.contains(universe)) return false;
    for (const auto& s : sigma.sets)
        if (!index.contains(s.complement_in(universe))) return false;
    for (std::size_t i = 0; i < sigma.sets.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!index.contains(sigma.sets[i] | sigma.sets[j])) return false;
    return true;
}

/// T0: every pair of distinct points is separated by an open containing
/// exactly one of them.
inline bool is_t0(const Topology& top) {
    for (std::size_t x = 0; x < top.point_count; ++x)
        for (std::size_t y = x + 1; y < top.point_count; ++y) {
            bool separated = false;
            for (const auto& open : top.opens)
                if (open.test(x) != open.test(y)) {
                    separated = true;
                    break;
                }
            if (!separated) return false;
        }
    return true;
}

/// Hausdorff by the literal pairwise-disjoint-opens search.
inline bool is_hausdorff(const Topology& top) {
    for (std::size_t x = 0; x < top.point_count; ++x)
        for (std::size_t y = x + 1; y < top.point_count; ++y) {
            bool separated = false;
            for (const auto& u : top.opens) {
                if (!u.test(x) || u.test(y)) continue;
                for (const auto& v : top.opens) {
                    if (v.test(y) && !v.test(x) && !u.intersects(v)) {
                        separated = true;
                        break;
                    }
                }
                if (separated) break;
            }
            if (!separated) return false;
        }
    return true;
}

/// Discrete: every singleton is open.
inline bool is_discrete(const Topology& top) {
    for (std::size_t x = 0; x < top.point_count; ++x) {
        Bitset singleton(top.point_count);
        singleton.set(x);
        if (std::find(top.opens.begin(), top.opens.end(), singleton) == top.opens.end()) return false;
    }
    return true;
}

/// A possibility is approximately verifiable when the intersection of all
/// opens containing it is its own singleton (its minimal neighborhood).
inline std::vector<bool> approximately_verifiable(const Topology& top) {
    std::vector<bool> out(top.point_count, false);
    for (std::size_t x = 0; x < top.point_count; ++x) {
        Bitset nbhd = Bitset::ones(top.point_count);
        for (const auto& open : top.opens)
            if (open.test(x)) nbhd &= open;
        Bitset singleton(top.point_count);
        singleton.set(x);
        out[x] = nbhd == singleton;
    }
    return out;
}

/// Full property battery for one space: topology axioms, separation,
/// second countability (the subbasis generates the opens), approximate
/// verifiability per point, and sigma-algebra = Borel algebra.
inline PropertyReport check_properties(const PossibilitySpace& space, const TheoreticalDomain& tdom,
                                       std::size_t cap = kDefaultEnumerationCap) {
    const Topology top = natural_topology(space, cap);
    PropertyReport report;
    report.is_topology = satisfies_topology_axioms(top);
    report.is_t0 = is_t0(top);
    report.is_hausdorff = is_hausdorff(top);
    report.approx_verifiable = approximately_verifiable(top);

    // Second countable: the finite subbasis generates the open family.
    std::vector<Bitset> regenerated;
    {
        std::unordered_set<Bitset, BitsetHash> index;
        auto add = [&](Bitset s) {
            if (index.insert(s).second) regenerated.push_back(std::move(s));
        };
        add(Bitset::ones(space.size()));
        for (const auto& s : top.subbasis) add(s);
        for (std::size_t i = 0; i < regenerated.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) add(regenerated[i] & regenerated[j]);
        add(Bitset::zeros(space.size()));
        for (std::size_t i = 0; i < regenerated.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) add(regenerated[i] | regenerated[j]);
    }
    report.is_second_countable = detail::sorted_unique(std::move(regenerated)) == top.opens;

    const SigmaAlgebra sigma = natural_sigma_algebra(space, tdom, cap);
    report.sigma_is_borel = sigma.sets == borel_of(top).sets;
    return report;
}

inline PropertyReport check_properties(const PossibilitySpace& space, std::size_t cap = kDefaultEnumerationCap,
                                       std::size_t closure_cap = kDefaultClosureCap) {
    return check_properties(space, build_domain(space.basis(), closure_cap), cap);
}

/// Verifies the seven statement-operator/set-operator correspondences for a
/// pair of theoretical members.
inline bool correspondence_check(const PossibilitySpace& space, const Statement& s1, const Statement& s2) {
    const Bitset a1 = theoretical_set(space, s1).members;
    const Bitset a2 = theoretical_set(space, s2).members;
    const Bitset universe = Bitset::ones(space.size());

    if (theoretical_set(space, conjoin(s1, s2)).members != (a1 & a2)) return false;
    if (theoretical_set(space, disjoin(s1, s2)).members != (a1 | a2)) return false;
    if (theoretical_set(space, negate(s1)).members != a1.complement_in(universe)) return false;
    if (equivalent(s1, s2) != (a1 == a2)) return false;
    if (narrower(s1, s2) != a1.is_subset_of(a2)) return false;
    if (broader(s1, s2) != a2.is_subset_of(a1)) return false;
    if (compatible(s1, s2) != a1.intersects(a2)) return false;
    return true;
}

}  // namespace expdomain
