#pragma once

#include <cmath>

#include "gti/function.hpp"
#include "gti/subgroup.hpp"

namespace gti {

/// Fourier transform to the dual group: fhat(omega) = w_G sum_x f(x) conj(omega(x)).
inline GroupFunction dft(const GroupFunction& f) {
    const Group& g = f.group;
    Group dual = g.dual();
    double w = to_double(g.weight());
    GroupFunction out = zero_function(dual);
    for (long long wi = 0; wi < dual.order(); ++wi) {
        Element omega = dual.element_at(wi);
        cplx acc(0, 0);
        for (long long xi = 0; xi < g.order(); ++xi)
            acc += f.values[static_cast<std::size_t>(xi)] * std::conj(g.character(omega, g.element_at(xi)));
        out.values[static_cast<std::size_t>(wi)] = acc * w;
    }
    return out;
}

/// Inverse transform with the dual weight: f(x) = w_dual sum_omega F(omega) omega(x).
/// The caller names the weight the reconstructed function should carry;
/// round-tripping uses the original group's weight.
inline GroupFunction idft(const GroupFunction& fhat, const Rat& primal_weight) {
    const Group& dual = fhat.group;
    Group primal(dual.factors(), primal_weight);
    if (!(primal.dual_weight() == dual.weight()))
        throw InvalidInput("dual weight is not the Plancherel dual of the requested primal weight");
    double w = to_double(dual.weight());
    GroupFunction out = zero_function(primal);
    for (long long xi = 0; xi < primal.order(); ++xi) {
        Element x = primal.element_at(xi);
        cplx acc(0, 0);
        for (long long wi = 0; wi < dual.order(); ++wi)
            acc += fhat.values[static_cast<std::size_t>(wi)] * primal.character(dual.element_at(wi), x);
        out.values[static_cast<std::size_t>(xi)] = acc * w;
    }
    return out;
}

/// |norm^2(fhat) - norm^2(f)|, zero up to roundoff under dual measures.
inline double plancherel_residual(const GroupFunction& f) {
    return std::abs(norm_sq(dft(f)) - norm_sq(f));
}

/// Weil quotient-integration residual for the subgroup H:
/// integral over G versus iterated sums over cosets and H, with the quotient
/// weight w_{G/H} = w_G / w_H forced by consistency at f == 1.
inline double weil_residual(const Group& g, const Subgroup& h, const GroupFunction& f) {
    if (!g.same_factors(h.parent)) throw InvalidInput("subgroup does not live in the given group");
    if (!(f.group.same_factors(g))) throw InvalidInput("function does not live on the given group");
    cplx whole(0, 0);
    for (const cplx& v : f.values) whole += v;
    whole *= to_double(g.weight());

    double w_h = to_double(h.weight);
    double w_quot = to_double(g.weight() / h.weight);
    cplx iterated(0, 0);
    for (long long rep : coset_representatives(g, h)) {
        Element r = g.element_at(rep);
        cplx fiber(0, 0);
        for (long long hi : h.element_indices)
            fiber += f.values[static_cast<std::size_t>(g.index_of(g.add(r, g.element_at(hi))))];
        iterated += fiber * w_h;
    }
    iterated *= w_quot;
    return std::abs(whole - iterated);
}

}  // namespace gti
