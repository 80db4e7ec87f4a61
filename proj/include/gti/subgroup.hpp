#pragma once

#include <algorithm>
#include <vector>

#include "gti/group.hpp"

namespace gti {

/// Subgroup of a finite abelian group with a full canonical element
/// enumeration and an attached Haar weight.
///
/// Subgroups built as translation lattices get the lattice-size weight
/// s(Gamma) = w_G * [G : Gamma], the measure of a fundamental domain, which
/// pairs with counting measure on the annihilator. Annihilators themselves
/// carry weight 1.
struct Subgroup {
    Group parent;
    std::vector<Element> generators;
    std::vector<long long> element_indices;  // sorted canonical indices
    Rat weight;

    long long size() const { return static_cast<long long>(element_indices.size()); }
    long long index_in_parent() const { return parent.order() / size(); }

    bool contains_index(long long idx) const {
        return std::binary_search(element_indices.begin(), element_indices.end(), idx);
    }
    bool contains(const Element& x) const { return contains_index(parent.index_of(parent.reduce(x))); }

    Element element(std::size_t i) const { return parent.element_at(element_indices[i]); }

    bool same_elements(const Subgroup& other) const {
        return parent.same_factors(other.parent) && element_indices == other.element_indices;
    }
};

namespace detail {

inline std::vector<long long> closure_indices(const Group& g, const std::vector<Element>& gens) {
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<long long> stack{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < stack.size(); ++head) {
        long long cur = stack[head];
        for (const Element& gen : gens) {
            long long nxt = g.index_of(g.add(g.element_at(cur), g.reduce(gen)));
            if (!seen[static_cast<std::size_t>(nxt)]) {
                seen[static_cast<std::size_t>(nxt)] = 1;
                stack.push_back(nxt);
            }
        }
    }
    std::vector<long long> out;
    for (long long i = 0; i < g.order(); ++i)
        if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

}  // namespace detail

/// Smallest subgroup containing the generators, weighted by the lattice-size
/// rule. Generators are reduced into canonical coordinates first.
inline Subgroup subgroup_from_generators(const Group& g, std::vector<Element> gens) {
    for (Element& e : gens) e = g.reduce(e);
    Subgroup sub;
    sub.parent = g;
    sub.generators = std::move(gens);
    sub.element_indices = detail::closure_indices(g, sub.generators);
    sub.weight = g.weight() * Rat(g.order() / sub.size());
    return sub;
}

inline Subgroup trivial_subgroup(const Group& g) { return subgroup_from_generators(g, {}); }

inline Subgroup full_subgroup(const Group& g) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        Element e = g.identity();
        e[i] = 1;
        gens.push_back(e);
    }
    return subgroup_from_generators(g, gens);
}

/// Annihilator {omega in the dual : omega(x) = 1 for all x in sub}, carrying
/// counting measure. Membership is decided in exact integer arithmetic
/// against the subgroup generators.
inline Subgroup annihilator(const Group& g, const Subgroup& sub) {
    if (!g.same_factors(sub.parent)) throw InvalidInput("subgroup does not live in the given group");
    Group dual = g.dual();
    Subgroup ann;
    ann.parent = dual;
    ann.weight = Rat(1);
    for (long long w = 0; w < dual.order(); ++w) {
        Element omega = dual.element_at(w);
        bool kills_all = true;
        for (const Element& gen : sub.generators)
            if (!g.character_is_one(omega, gen)) { kills_all = false; break; }
        if (kills_all) ann.element_indices.push_back(w);
    }
    // a generating set for downstream annihilator-of-annihilator calls
    for (long long idx : ann.element_indices) ann.generators.push_back(dual.element_at(idx));
    return ann;
}

/// One representative per coset of sub, in canonical order.
inline std::vector<long long> coset_representatives(const Group& g, const Subgroup& sub) {
    std::vector<char> covered(static_cast<std::size_t>(g.order()), 0);
    std::vector<long long> reps;
    for (long long i = 0; i < g.order(); ++i) {
        if (covered[static_cast<std::size_t>(i)]) continue;
        reps.push_back(i);
        Element rep = g.element_at(i);
        for (long long h : sub.element_indices) {
            long long shifted = g.index_of(g.add(rep, g.element_at(h)));
            covered[static_cast<std::size_t>(shifted)] = 1;
        }
    }
    return reps;
}

}  // namespace gti
