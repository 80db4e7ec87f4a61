#pragma once

#include <utility>
#include <vector>

#include "gti/dft.hpp"
#include "gti/function.hpp"
#include "gti/subgroup.hpp"

namespace gti {

/// One generator of a layer together with its weight in the layer's
/// generator measure.
struct Generator {
    GroupFunction fn;
    Rat weight = Rat(1);
};

/// A layer pairs a translation subgroup Gamma_j with finitely many weighted
/// generators.
struct Layer {
    Subgroup gamma;
    std::vector<Generator> generators;
};

/// Generalized translation invariant system: the union over layers of all
/// Gamma_j translates of that layer's generators.
struct GtiSystem {
    Group group;
    std::vector<Layer> layers;
};

inline void validate_system(const GtiSystem& sys) {
    for (const Layer& layer : sys.layers) {
        if (!layer.gamma.parent.same_factors(sys.group) || !(layer.gamma.parent.weight() == sys.group.weight()))
            throw InvalidInput("layer subgroup lives on a different group");
        for (const Generator& gen : layer.generators) {
            if (!(gen.fn.group == sys.group))
                throw InvalidInput("generator lives on a different group");
            if (gen.weight <= 0) throw InvalidInput("generator weight must be positive");
        }
    }
}

/// True when both systems share the group, the layer subgroups, and the
/// generator counts and weights, so that a mixed frame operator is defined.
inline void require_same_shape(const GtiSystem& a, const GtiSystem& b) {
    if (!(a.group == b.group)) throw InvalidInput("systems live on different groups");
    if (a.layers.size() != b.layers.size()) throw InvalidInput("systems have different layer counts");
    for (std::size_t j = 0; j < a.layers.size(); ++j) {
        if (!a.layers[j].gamma.same_elements(b.layers[j].gamma))
            throw InvalidInput("layer translation subgroups differ");
        if (a.layers[j].generators.size() != b.layers[j].generators.size())
            throw InvalidInput("layer generator counts differ");
        for (std::size_t p = 0; p < a.layers[j].generators.size(); ++p)
            if (!(a.layers[j].generators[p].weight == b.layers[j].generators[p].weight))
                throw InvalidInput("generator weights differ between the systems");
    }
}

/// Gabor system on a finite group: modulations along a subgroup of the dual,
/// translations along a subgroup of the group, windows g and h.
struct GaborSystem {
    Group group;
    Subgroup lambda;     // translation subgroup of G
    Subgroup gamma_hat;  // modulation subgroup of the dual group
    GroupFunction g;
    GroupFunction h;
};

inline void validate_gabor(const GaborSystem& sys) {
    if (!sys.lambda.parent.same_factors(sys.group)) throw InvalidInput("lambda must be a subgroup of the group");
    Group dual = sys.group.dual();
    if (!sys.gamma_hat.parent.same_factors(dual) || !(sys.gamma_hat.parent.weight() == dual.weight()))
        throw InvalidInput("gamma_hat must be a subgroup of the dual group");
    if (!(sys.g.group == sys.group) || !(sys.h.group == sys.group))
        throw InvalidInput("window does not live on the group");
}

enum class GaborRoute { time, frequency };

/// Translation invariant image of one Gabor window.
///
/// Time route: a single layer on G translating along lambda, one generator
/// E_gamma g per modulation, each weighted by the lattice size of gamma_hat.
///
/// Frequency route: the Fourier picture, a single layer on the dual group
/// translating along gamma_hat with generators E_{-lambda} ghat weighted by
/// the lattice size of lambda. Both routes give unitarily equivalent frame
/// operators, so frame and duality verdicts agree.
inline GtiSystem gabor_window_to_ti(const GaborSystem& sys, const GroupFunction& window, GaborRoute route) {
    validate_gabor(sys);
    GtiSystem out;
    if (route == GaborRoute::time) {
        out.group = sys.group;
        Layer layer;
        layer.gamma = sys.lambda;
        for (std::size_t i = 0; i < sys.gamma_hat.element_indices.size(); ++i)
            layer.generators.push_back({modulate(window, sys.gamma_hat.element(i)), sys.gamma_hat.weight});
        out.layers.push_back(std::move(layer));
    } else {
        Group dual = sys.group.dual();
        out.group = dual;
        GroupFunction what = dft(window);
        Layer layer;
        layer.gamma = sys.gamma_hat;
        for (std::size_t i = 0; i < sys.lambda.element_indices.size(); ++i) {
            Element neg_l = sys.group.neg(sys.lambda.element(i));
            layer.generators.push_back({modulate(what, neg_l), sys.lambda.weight});
        }
        out.layers.push_back(std::move(layer));
    }
    validate_system(out);
    return out;
}

inline std::pair<GtiSystem, GtiSystem> gabor_to_ti(const GaborSystem& sys, GaborRoute route) {
    return {gabor_window_to_ti(sys, sys.g, route), gabor_window_to_ti(sys, sys.h, route)};
}

}  // namespace gti
