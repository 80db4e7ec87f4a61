#pragma once

#include <complex>
#include <vector>

#include "gti/group.hpp"

namespace gti {

using cplx = std::complex<double>;

/// Function on a finite abelian group, stored densely in canonical element
/// order. Inner products and norms carry the group's Haar weight.
struct GroupFunction {
    Group group;
    std::vector<cplx> values;

    GroupFunction() = default;
    GroupFunction(Group g, std::vector<cplx> vals) : group(std::move(g)), values(std::move(vals)) {
        if (static_cast<long long>(values.size()) != group.order())
            throw InvalidInput("function value count does not match group order");
    }

    cplx at(const Element& x) const { return values[static_cast<std::size_t>(group.index_of(x))]; }
};

inline GroupFunction zero_function(const Group& g) {
    return GroupFunction(g, std::vector<cplx>(static_cast<std::size_t>(g.order()), cplx(0, 0)));
}

inline GroupFunction delta_function(const Group& g, const Element& at, cplx amplitude = cplx(1, 0)) {
    GroupFunction f = zero_function(g);
    f.values[static_cast<std::size_t>(g.index_of(at))] = amplitude;
    return f;
}

inline GroupFunction constant_function(const Group& g, cplx value) {
    return GroupFunction(g, std::vector<cplx>(static_cast<std::size_t>(g.order()), value));
}

/// L2 inner product with the group measure: w_G * sum_x f(x) conj(g(x)).
inline cplx inner(const GroupFunction& f, const GroupFunction& g) {
    if (!(f.group == g.group)) throw InvalidInput("inner product across different groups");
    cplx acc(0, 0);
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * std::conj(g.values[i]);
    return acc * to_double(f.group.weight());
}

inline double norm_sq(const GroupFunction& f) {
    double acc = 0;
    for (const cplx& v : f.values) acc += std::norm(v);
    return acc * to_double(f.group.weight());
}

/// (T_a f)(x) = f(x - a).
inline GroupFunction translate(const GroupFunction& f, const Element& a) {
    const Group& g = f.group;
    Element shift = g.reduce(a);
    GroupFunction out = zero_function(g);
    for (long long i = 0; i < g.order(); ++i) {
        Element x = g.element_at(i);
        out.values[static_cast<std::size_t>(i)] = f.values[static_cast<std::size_t>(g.index_of(g.sub(x, shift)))];
    }
    return out;
}

/// (E_chi f)(x) = chi(x) f(x), with chi a character label (dual element).
inline GroupFunction modulate(const GroupFunction& f, const Element& chi) {
    const Group& g = f.group;
    Element c = g.reduce(chi);
    GroupFunction out = f;
    for (long long i = 0; i < g.order(); ++i)
        out.values[static_cast<std::size_t>(i)] *= g.character(c, g.element_at(i));
    return out;
}

inline GroupFunction scale(const GroupFunction& f, cplx c) {
    GroupFunction out = f;
    for (cplx& v : out.values) v *= c;
    return out;
}

}  // namespace gti
