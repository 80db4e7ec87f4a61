#pragma once

#include <random>

#include "gti/frame_oracle.hpp"
#include "gti/gti_system.hpp"

namespace gti {

/// Full-lattice delta system: Gamma = G with the single generator delta_0,
/// weighted so the frame operator is exactly the identity for any Haar
/// weight.
inline GtiSystem onb_delta_system(const Group& g) {
    GtiSystem sys;
    sys.group = g;
    Layer layer;
    layer.gamma = full_subgroup(g);
    Rat w = Rat(1) / (g.weight() * g.weight());
    layer.generators.push_back({delta_function(g, g.identity()), w});
    sys.layers.push_back(std::move(layer));
    return sys;
}

/// Point-mass system on the trivial lattice: one delta per group element.
/// With parseval weights the frame operator is the identity; with the dual
/// Haar weight instead it is w_G times the identity.
inline GtiSystem onb_pointmass_system(const Group& g, bool parseval = true) {
    GtiSystem sys;
    sys.group = g;
    Layer layer;
    layer.gamma = trivial_subgroup(g);
    Rat w = parseval ? g.dual_weight() / g.weight() : g.dual_weight();
    for (long long i = 0; i < g.order(); ++i)
        layer.generators.push_back({delta_function(g, g.element_at(i)), w});
    sys.layers.push_back(std::move(layer));
    return sys;
}

/// Character system on the trivial lattice, every character scaled by c. The
/// frame operator is |c|^2 times the identity.
inline GtiSystem fourier_onb_system(const Group& g, cplx c = cplx(1, 0)) {
    GtiSystem sys;
    sys.group = g;
    Group dual = g.dual();
    Layer layer;
    layer.gamma = trivial_subgroup(g);
    Rat total = g.weight() * Rat(g.order());
    Rat w = Rat(1) / (total * total);
    for (long long wi = 0; wi < dual.order(); ++wi) {
        Element omega = dual.element_at(wi);
        GroupFunction ch = zero_function(g);
        for (long long x = 0; x < g.order(); ++x) ch.values[static_cast<std::size_t>(x)] = c * g.character(omega, g.element_at(x));
        layer.generators.push_back({std::move(ch), w});
    }
    sys.layers.push_back(std::move(layer));
    return sys;
}

/// Finite analogue of the layered dual tiling on Z_{N^J}: layer j translates
/// along <N^j> and its generators are inverse transforms of the N^j
/// frequency tiles of width N^{J-j}, scaled so |ghat|^2 = (N-1)/N^j. The
/// frame operator is (1 - N^-J) I; with completed = true an extra point-mass
/// layer adds the missing N^-J I, giving an exactly Parseval system.
inline GtiSystem tiling_system(long long n, int j_max, bool completed) {
    if (n < 2) throw InvalidInput("tiling family needs N >= 2");
    if (j_max < 1) throw InvalidInput("tiling family needs at least one layer");
    long long d = 1;
    for (int j = 0; j < j_max; ++j) {
        d *= n;
        if (d > kDefaultOracleOrderCap) throw InvalidInput("group order exceeds the dense-oracle cap");
    }
    Group g = make_group({d});
    Group dual = g.dual();
    GtiSystem sys;
    sys.group = g;
    long long tile_width = d;
    long long step = 1;
    for (int j = 1; j <= j_max; ++j) {
        tile_width /= n;  // N^{J-j}
        step *= n;        // N^j
        Layer layer;
        layer.gamma = subgroup_from_generators(g, {Element{step}});
        double amp = std::sqrt(double(n - 1) / double(step));
        for (long long p = 0; p < step; ++p) {
            GroupFunction tile = zero_function(dual);
            for (long long w = p * tile_width; w < (p + 1) * tile_width; ++w)
                tile.values[static_cast<std::size_t>(w)] = amp;
            layer.generators.push_back({idft(tile, g.weight()), Rat(1)});
        }
        sys.layers.push_back(std::move(layer));
    }
    if (completed) {
        Layer layer;
        layer.gamma = trivial_subgroup(g);
        Rat w = Rat(1, step) / Rat(d);  // N^-J spread over d point masses
        for (long long x = 0; x < d; ++x)
            layer.generators.push_back({delta_function(g, g.element_at(x)), w});
        sys.layers.push_back(std::move(layer));
    }
    return sys;
}

/// Canonical dual of a single-layer system: S^{-1} applied to each
/// generator. The frame operator of one layer commutes with its own lattice
/// translations, so the result is an exact dual system whenever S is
/// invertible. Multi-layer systems are rejected because their total frame
/// operator need not commute with any one lattice.
inline GtiSystem canonical_dual_single_layer(const GtiSystem& sys, double rel_tol = 1e-9) {
    validate_system(sys);
    if (sys.layers.size() != 1) throw InvalidInput("canonical dual is computed per single layer");
    Mat s = frame_operator_matrix(sys, sys);
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    const auto& ev = es.eigenvalues();
    if (ev(0) <= rel_tol * std::max(1.0, ev(ev.size() - 1)))
        throw InvalidInput("system is not a frame; the frame operator is singular");
    GtiSystem dual = sys;
    for (Generator& gen : dual.layers[0].generators) {
        Vec v = detail::to_vec(gen.fn);
        Vec solved = es.eigenvectors() * (es.eigenvalues().cwiseInverse().asDiagonal() *
                                          (es.eigenvectors().adjoint() * v));
        for (Eigen::Index i = 0; i < solved.size(); ++i)
            gen.fn.values[static_cast<std::size_t>(i)] = solved(i);
    }
    return dual;
}

/// Random builders used by the property tests and the acceptance sweep. All
/// draw from a caller-owned engine so runs are reproducible from the seed.

inline Group random_group(std::mt19937_64& rng, long long max_order = 64, bool random_weight = false) {
    static const long long pool[] = {2, 3, 4, 5, 6, 8, 9, 12, 16};
    std::uniform_int_distribution<int> rank_dist(1, 3);
    std::uniform_int_distribution<int> pick(0, 8);
    for (;;) {
        int rank = rank_dist(rng);
        std::vector<long long> factors;
        long long order = 1;
        for (int i = 0; i < rank; ++i) {
            long long f = pool[pick(rng)];
            factors.push_back(f);
            order *= f;
        }
        if (order > max_order) continue;
        Rat w(1);
        if (random_weight) {
            static const Rat weights[] = {Rat(1), Rat(1), Rat(1, 2), Rat(2), Rat(3, 4)};
            w = weights[std::uniform_int_distribution<int>(0, 4)(rng)];
        }
        return make_group(std::move(factors), w);
    }
}

inline Subgroup random_subgroup(std::mt19937_64& rng, const Group& g) {
    std::uniform_int_distribution<int> count(0, 2);
    std::uniform_int_distribution<long long> idx(0, g.order() - 1);
    std::vector<Element> gens;
    int n = count(rng);
    for (int i = 0; i < n; ++i) gens.push_back(g.element_at(idx(rng)));
    return subgroup_from_generators(g, gens);
}

inline GroupFunction random_function(std::mt19937_64& rng, const Group& g) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    GroupFunction f = zero_function(g);
    for (cplx& v : f.values) v = cplx(gauss(rng), gauss(rng));
    double n2 = norm_sq(f);
    if (n2 > 0) f = scale(f, 1.0 / std::sqrt(n2));
    return f;
}

inline GtiSystem random_system(std::mt19937_64& rng, const Group& g, int max_layers = 3,
                               int max_generators = 2) {
    std::uniform_int_distribution<int> layer_count(1, max_layers);
    std::uniform_int_distribution<int> gen_count(1, max_generators);
    std::uniform_int_distribution<int> weight_pick(0, 5);
    GtiSystem sys;
    sys.group = g;
    int layers = layer_count(rng);
    for (int j = 0; j < layers; ++j) {
        Layer layer;
        layer.gamma = random_subgroup(rng, g);
        int gens = gen_count(rng);
        for (int p = 0; p < gens; ++p) {
            Rat w(1);
            int r = weight_pick(rng);
            if (r == 4) w = Rat(1, 2);
            if (r == 5) w = Rat(2);
            layer.generators.push_back({random_function(rng, g), w});
        }
        sys.layers.push_back(std::move(layer));
    }
    return sys;
}

inline GaborSystem random_gabor(std::mt19937_64& rng, const Group& g) {
    GaborSystem sys;
    sys.group = g;
    sys.lambda = random_subgroup(rng, g);
    sys.gamma_hat = random_subgroup(rng, g.dual());
    sys.g = random_function(rng, g);
    sys.h = random_function(rng, g);
    return sys;
}

}  // namespace gti
