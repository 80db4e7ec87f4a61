#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "gti/frame_oracle.hpp"
#include "gti/reference_systems.hpp"

using namespace gti;

namespace {

Vec random_vec(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    return v;
}

}  // namespace

TEST_CASE("delta basis gives the identity operator") {
    for (const Group& g : {make_group({8}), make_group({2, 6}), make_group({3, 3})}) {
        GtiSystem sys = onb_delta_system(g);
        Mat s = frame_operator_matrix(sys, sys);
        CHECK(max_abs_entry(s - Mat::Identity(s.rows(), s.cols())) < 1e-13);
        FrameBounds b = frame_bounds_bruteforce(sys);
        CHECK(std::abs(b.lower - 1.0) < 1e-12);
        CHECK(std::abs(b.upper - 1.0) < 1e-12);
    }
}

TEST_CASE("operator scales with the point-mass weight convention") {
    Group heavy = make_group({6}, Rat(2));

    GtiSystem parseval = onb_pointmass_system(heavy, true);
    FrameBounds bp = frame_bounds_bruteforce(parseval);
    CHECK(std::abs(bp.lower - 1.0) < 1e-12);
    CHECK(std::abs(bp.upper - 1.0) < 1e-12);

    GtiSystem plain = onb_pointmass_system(heavy, false);
    Mat s = frame_operator_matrix(plain, plain);
    CHECK(max_abs_entry(s - 2.0 * Mat::Identity(s.rows(), s.cols())) < 1e-12);
    FrameBounds b = frame_bounds_bruteforce(plain);
    CHECK(std::abs(b.lower - 2.0) < 1e-12);
    CHECK(std::abs(b.upper - 2.0) < 1e-12);
}

TEST_CASE("character system scales quadratically with the amplitude") {
    Group z9 = make_group({9});
    GtiSystem sys = fourier_onb_system(z9, cplx(1.5, 0));
    FrameBounds b = frame_bounds_bruteforce(sys);
    CHECK(std::abs(b.lower - 2.25) < 1e-11);
    CHECK(std::abs(b.upper - 2.25) < 1e-11);
}

TEST_CASE("mismatched systems fail with the expected residual") {
    Group z8 = make_group({8});
    GtiSystem sys = onb_delta_system(z8);
    GtiSystem doubled = sys;
    for (Layer& layer : doubled.layers)
        for (Generator& gen : layer.generators) gen.fn = scale(gen.fn, cplx(2, 0));
    Verdict v = is_dual_bruteforce(sys, doubled, 1e-10);
    CHECK_FALSE(v.pass);
    CHECK(std::abs(v.max_residual - 1.0) < 1e-12);  // S = 2I, so max |S - I| entry is 1
    REQUIRE(v.spectral_residual.has_value());
    CHECK(std::abs(*v.spectral_residual - 1.0) < 1e-12);

    Verdict vok = is_dual_bruteforce(sys, sys, 1e-10);
    CHECK(vok.pass);
    CHECK(vok.max_residual < 1e-13);
}

TEST_CASE("matrix agrees with a literal rank-one enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Group g = random_group(rng, 24, true);
        GtiSystem sys_g = random_system(rng, g);
        GtiSystem sys_h = sys_g;
        for (Layer& layer : sys_h.layers)
            for (Generator& gen : layer.generators) gen.fn = random_function(rng, g);

        Mat s = frame_operator_matrix(sys_g, sys_h);
        const auto n = static_cast<Eigen::Index>(g.order());

        // apply the defining sum to each delta and compare columns
        double w_point = to_double(g.weight());
        for (long long col = 0; col < g.order(); ++col) {
            GroupFunction f = delta_function(g, g.element_at(col));
            std::vector<cplx> out(static_cast<std::size_t>(g.order()), cplx(0, 0));
            for (std::size_t j = 0; j < sys_g.layers.size(); ++j) {
                const Layer& lg = sys_g.layers[j];
                const Layer& lh = sys_h.layers[j];
                for (std::size_t p = 0; p < lg.generators.size(); ++p) {
                    double coeff = to_double(lg.generators[p].weight) * to_double(lg.gamma.weight) * w_point;
                    for (long long gi : lg.gamma.element_indices) {
                        Element gamma = g.element_at(gi);
                        GroupFunction tg = translate(lg.generators[p].fn, gamma);
                        GroupFunction th = translate(lh.generators[p].fn, gamma);
                        cplx c = coeff * std::conj(tg.values[static_cast<std::size_t>(col)]);
                        for (long long x = 0; x < g.order(); ++x)
                            out[static_cast<std::size_t>(x)] += c * th.values[static_cast<std::size_t>(x)];
                    }
                }
            }
            double err = 0;
            for (Eigen::Index row = 0; row < n; ++row)
                err = std::max(err, std::abs(s(row, static_cast<Eigen::Index>(col)) -
                                             out[static_cast<std::size_t>(row)]));
            CHECK(err < 1e-11);
        }
    }
}

TEST_CASE("frame bounds bracket every Rayleigh quotient") {
    std::mt19937_64 rng(7);
    for (int sys_trial = 0; sys_trial < 10; ++sys_trial) {
        Group g = random_group(rng, 32, true);
        GtiSystem sys = random_system(rng, g);
        Mat s = frame_operator_matrix(sys, sys);
        FrameBounds b = frame_bounds_bruteforce(sys);
        const auto n = static_cast<Eigen::Index>(g.order());
        for (int f_trial = 0; f_trial < 100; ++f_trial) {
            Vec f = random_vec(rng, n);
            double quot = (f.adjoint() * s * f).real()(0) / f.squaredNorm();
            CHECK(quot >= b.lower - 1e-8);
            CHECK(quot <= b.upper + 1e-8);
        }
    }
}

TEST_CASE("power iteration reproduces both eigenvalue extremes") {
    std::mt19937_64 rng(11);
    Group g = make_group({2, 8});
    GtiSystem sys = random_system(rng, g);
    Mat s = frame_operator_matrix(sys, sys);
    FrameBounds b = frame_bounds_bruteforce(sys);
    const auto n = static_cast<Eigen::Index>(g.order());

    auto dominant = [&](const Mat& m) {
        Vec v = random_vec(rng, n);
        v.normalize();
        double lam = 0;
        for (int it = 0; it < 6000; ++it) {
            Vec w = m * v;
            lam = w.norm();
            if (lam == 0) break;
            v = w / lam;
        }
        return (v.adjoint() * m * v).real()(0);
    };

    double top = dominant(s);
    CHECK(std::abs(top - b.upper) < 1e-8 * (1 + std::abs(b.upper)));

    // shift so the smallest eigenvalue becomes dominant
    double c = top + 1.0;
    Mat shifted = c * Mat::Identity(n, n) - s;
    double low = c - dominant(shifted);
    CHECK(std::abs(low - b.lower) < 1e-6 * (1 + std::abs(b.lower)));
}

TEST_CASE("fiberization identity holds on random data") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        Group g = random_group(rng, 36, true);
        Subgroup h = random_subgroup(rng, g);
        GroupFunction f1 = random_function(rng, g);
        GroupFunction f2 = random_function(rng, g);
        GroupFunction phi = random_function(rng, g);
        GroupFunction psi = random_function(rng, g);
        CHECK(fiber_identity_residual(g, h, f1, f2, phi, psi) < 1e-10);
    }
}

TEST_CASE("oracle refuses oversized groups") {
    Group big = make_group({5000});
    GtiSystem sys = onb_delta_system(big);
    CHECK_THROWS_AS(frame_operator_matrix(sys, sys), InvalidInput);
    CHECK_THROWS_AS(frame_bounds_bruteforce(sys, 100), InvalidInput);
    CHECK_NOTHROW(frame_bounds_bruteforce(onb_delta_system(make_group({101})), 101));
}
