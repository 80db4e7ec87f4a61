// Acceptance gate: one line per criterion, exit code = number of failures.
// Every verdict produced by the fast evaluators is cross-checked against an
// independently coded dense oracle or an exact closed form.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "gti/conditions.hpp"
#include "gti/reference_systems.hpp"
#include "gti/torus_exact.hpp"

using namespace gti;

namespace {

struct Criterion {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

GtiSystem rerandomized(std::mt19937_64& rng, const GtiSystem& shape) {
    GtiSystem out = shape;
    for (Layer& layer : out.layers)
        for (Generator& gen : layer.generators) gen.fn = random_function(rng, out.group);
    return out;
}

// ---------------------------------------------------------------------------
// 1: equation verdict vs dense oracle on a mixed population of systems.
Criterion criterion_equation_vs_oracle() {
    Criterion c;
    auto start = Clock::now();
    std::mt19937_64 rng(101);
    const double tol = 1e-9;
    int disagreements = 0, passes = 0, fails = 0;
    for (int i = 0; i < 500; ++i) {
        GtiSystem sys_g, sys_h;
        int flavor = i % 5;
        if (flavor == 0) {
            for (int attempt = 0;; ++attempt) {
                Group g = random_group(rng, 64, true);
                sys_g = random_system(rng, g, 1, 3);
                try {
                    sys_h = canonical_dual_single_layer(sys_g);
                    break;
                } catch (const InvalidInput&) {
                    if (attempt > 200) return c.require(false, "could not draw an invertible system"), c;
                }
            }
        } else if (flavor == 1) {
            Group g = random_group(rng, 64, true);
            switch (i % 3) {
                case 0: sys_g = onb_delta_system(g); break;
                case 1: sys_g = onb_pointmass_system(g); break;
                default: sys_g = fourier_onb_system(g); break;
            }
            sys_h = sys_g;
        } else if (flavor == 2) {
            Group g = random_group(rng, 64, true);
            sys_g = onb_delta_system(g);
            sys_h = sys_g;
            sys_h.layers[0].generators[0].fn.values[0] += cplx(1e-6, 0);  // near miss
        } else {
            Group g = random_group(rng, 64, true);
            sys_g = random_system(rng, g, 3, 4);
            sys_h = rerandomized(rng, sys_g);
        }
        bool eq = verify_dual_talpha(sys_g, sys_h, tol).pass;
        bool brute = is_dual_bruteforce(sys_g, sys_h, tol).pass;
        if (eq != brute) ++disagreements;
        (eq ? passes : fails)++;
    }
    double dt = seconds_since(start);
    c.require(disagreements == 0, "verdicts disagreed " + std::to_string(disagreements) + " times");
    c.require(passes >= 100 && fails >= 100, "population was one-sided");
    c.require(dt < 60.0, "sweep exceeded 60s");
    char buf[160];
    std::snprintf(buf, sizeof buf, "500 systems, %d passes / %d fails, 0 disagreements, %.1fs", passes,
                  fails, dt);
    if (c.ok) c.detail = buf;
    return c;
}

// ---------------------------------------------------------------------------
// 2: layered tiling family closed forms, exact to depth 20, engine-matched.
Criterion criterion_tiling_closed_forms() {
    Criterion c;
    auto start = Clock::now();
    for (long long n : {2LL, 3LL, 5LL}) {
        Ex0402eReport rep = repro_ex_0402e(n, 20);
        Rat full = rat_pow(Rat(n), 20);
        c.require(rep.alpha_lic_partial == (full - 1) / full, "partial sum mismatch");
        c.require(rep.alpha_lic_tail == Rat(1) / full, "tail mismatch");
        c.require(rep.t0_partial == rep.alpha_lic_partial && rep.cc_lower_partial == rep.t0_partial &&
                      rep.cc_upper_partial == rep.t0_partial,
                  "diagonal partials disagree");
        c.require(rep.lic_terms == std::vector<Rat>(20, Rat(n - 1)), "per-layer terms wrong");
        c.require(rep.lic_divergent && rep.offdiagonal_exact_zero, "qualitative flags wrong");

        long depth = n == 2 ? 5 : (n == 3 ? 3 : 2);
        std::vector<TorusLayer> layers = tiling_layers(n, depth);
        Rat expect = Rat(1) - Rat(1) / rat_pow(Rat(n), depth);
        StepDeviation diag = max_deviation(talpha_torus(layers, Rat(0)), expect);
        c.require(diag.all_exact && diag.value == 0, "torus engine diagonal mismatch");
        StepDeviation off =
            max_deviation(talpha_torus(layers, Rat(1) / rat_pow(Rat(n), depth)), Rat(0));
        c.require(off.all_exact && off.value == 0, "torus engine off-diagonal mismatch");

        int fin_depth = n == 2 ? 3 : 2;
        FrameBounds truncated = frame_bounds_bruteforce(tiling_system(n, fin_depth, false));
        double gap = 1.0 - std::pow(static_cast<double>(n), -fin_depth);
        c.require(std::abs(truncated.lower - gap) < 1e-12 && std::abs(truncated.upper - gap) < 1e-12,
                  "finite analogue bounds wrong");
        FrameBounds completed = frame_bounds_bruteforce(tiling_system(n, fin_depth, true));
        c.require(std::abs(completed.lower - 1.0) < 1e-12 && std::abs(completed.upper - 1.0) < 1e-12,
                  "completed analogue is not tight");
    }
    double dt = seconds_since(start);
    c.require(dt < 5.0, "closed forms exceeded 5s");
    char buf[120];
    std::snprintf(buf, sizeof buf, "N in {2,3,5}, depth 20 exact + engine cross-check, %.2fs", dt);
    if (c.ok) c.detail = buf;
    return c;
}

// ---------------------------------------------------------------------------
// 3: reordered-basis values by exact phase folding and a literal series.
Criterion criterion_reordered_basis() {
    Criterion c;
    ReorderedOnbReport diag = repro_reordered_onb(2, 0, 0);
    c.require(diag.exact_re && *diag.exact_re == Rat(1), "diagonal value not 1");
    c.require(repro_reordered_onb(3, 0, 0).exact_re == Rat(1, 2), "N=3 diagonal not 1/2");
    c.require(repro_reordered_onb(4, 0, 0).exact_re == Rat(1, 3), "N=4 diagonal not 1/3");

    const struct { long long k; long j; } offs[] = {{1, 1}, {1, 3}, {3, 2}, {5, 4}, {7, 5}};
    for (const auto& o : offs) {
        ReorderedOnbReport rep = repro_reordered_onb(2, o.k, o.j);
        c.require(rep.exact_re && *rep.exact_re == Rat(0), "off-diagonal value not exactly 0");

        Rat alpha = Rat(o.k) / rat_pow(Rat(2), o.j);
        cplx literal(0, 0);
        for (long j = o.j; j <= 120; ++j) {
            Rat tau = rat_pow(Rat(2), j - 1) - 1;
            literal += std::pow(2.0, -static_cast<double>(j)) * unit_phase(frac_mod1(-tau * alpha));
        }
        c.require(std::abs(rep.value - literal) < 1e-12, "literal series disagrees");
    }
    bool threw = false;
    try {
        repro_reordered_onb(2, 2, 1);
    } catch (const InvalidInput&) {
        threw = true;
    }
    c.require(threw, "even k was accepted");
    if (c.ok) c.detail = "diagonal 1/(N-1) and five exact-zero foldings, series-matched";
    return c;
}

// ---------------------------------------------------------------------------
// 4: separable lattice duality on three lattices with constructed duals.
Criterion criterion_separable_lattices() {
    Criterion c;
    auto start = Clock::now();
    std::mt19937_64 rng(104);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const struct { long long d, a, b; } lattices[] = {{12, 3, 4}, {16, 4, 4}, {24, 2, 3}};
    int checked = 0;
    for (const auto& lat : lattices) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<cplx> g(static_cast<std::size_t>(lat.d)), h;
            for (int attempt = 0;; ++attempt) {
                for (cplx& v : g) v = cplx(gauss(rng), gauss(rng));
                Mat s = finite_gabor_plain_operator(g, g, lat.d, lat.a, lat.b);
                Vec gv(static_cast<Eigen::Index>(lat.d));
                for (long long i = 0; i < lat.d; ++i) gv(static_cast<Eigen::Index>(i)) = g[static_cast<std::size_t>(i)];
                Vec hv = s.fullPivLu().solve(gv);
                if ((s * hv - gv).norm() <= 1e-8 * gv.norm()) {
                    h.assign(hv.data(), hv.data() + lat.d);
                    break;
                }
                if (attempt > 50) return c.require(false, "no invertible window found"), c;
            }
            Verdict v = finite_gabor_check(g, h, lat.d, lat.a, lat.b, 1e-9);
            c.require(v.pass, "constructed dual failed the lattice equation");
            c.require(v.extras.size() == 2 && v.extras[1].second == 1.0, "dense operator disagreed");

            std::vector<cplx> broken = h;
            broken[0] += cplx(1e-3, 0);
            Verdict bad = finite_gabor_check(g, broken, lat.d, lat.a, lat.b, 1e-9);
            c.require(!bad.pass && bad.extras[1].second == 0.0, "perturbed window still passed");
            ++checked;
        }
    }
    double dt = seconds_since(start);
    c.require(dt < 30.0, "lattice sweep exceeded 30s");
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d constructed duals + perturbations on 3 lattices, %.1fs", checked, dt);
    if (c.ok) c.detail = buf;
    return c;
}

// ---------------------------------------------------------------------------
// 5: time route, frequency route, and dense oracle agree on Gabor systems.
Criterion criterion_gabor_routes() {
    Criterion c;
    std::mt19937_64 rng(105);
    int passes = 0, fails = 0;
    for (int i = 0; i < 100; ++i) {
        GaborSystem sys;
        if (i % 4 == 0) {
            // constructed dual: invert the window-level frame operator
            bool built = false;
            for (int attempt = 0; attempt < 80 && !built; ++attempt) {
                sys = random_gabor(rng, random_group(rng, 36));
                GtiSystem tg = gabor_window_to_ti(sys, sys.g, GaborRoute::time);
                Mat s = frame_operator_matrix(tg, tg);
                Eigen::SelfAdjointEigenSolver<Mat> es(s);
                const auto& ev = es.eigenvalues();
                if (ev(0) <= 1e-6 * std::max(1.0, ev(ev.size() - 1))) continue;
                Vec gv = Vec::Zero(s.rows());
                for (std::size_t x = 0; x < sys.g.values.size(); ++x) gv(static_cast<Eigen::Index>(x)) = sys.g.values[x];
                Vec hv = es.eigenvectors() * (ev.cwiseInverse().asDiagonal() * (es.eigenvectors().adjoint() * gv));
                for (std::size_t x = 0; x < sys.h.values.size(); ++x) sys.h.values[x] = hv(static_cast<Eigen::Index>(x));
                built = true;
            }
            if (!built) return c.require(false, "no Gabor frame found"), c;
        } else {
            sys = random_gabor(rng, random_group(rng, 36));
        }
        bool time_pass = gabor_dual_time(sys, 1e-9).pass;
        bool freq_pass = gabor_dual_freq(sys, 1e-9).pass;
        auto [tg, th] = gabor_to_ti(sys, GaborRoute::time);
        auto [fg, fh] = gabor_to_ti(sys, GaborRoute::frequency);
        bool brute_time = is_dual_bruteforce(tg, th, 1e-9).pass;
        bool brute_freq = is_dual_bruteforce(fg, fh, 1e-9).pass;
        c.require(time_pass == brute_time && freq_pass == brute_time && brute_freq == brute_time,
                  "routes disagreed on system " + std::to_string(i));
        (brute_time ? passes : fails)++;
    }
    c.require(passes >= 15 && fails >= 15, "population was one-sided");
    if (c.ok)
        c.detail = "100 systems, " + std::to_string(passes) + " passes / " + std::to_string(fails) +
                   " fails, all four verdicts agree";
    return c;
}

// ---------------------------------------------------------------------------
// 6: the diagonal sum never exceeds the true upper frame bound.
Criterion criterion_diagonal_bound() {
    Criterion c;
    std::mt19937_64 rng(106);
    double worst_gap = 0;
    for (int i = 0; i < 60; ++i) {
        Group g = random_group(rng, 48, true);
        GtiSystem sys = random_system(rng, g, 3, 3);
        ConditionReport cal = calderon_report(sys);
        double cal_max = 0;
        for (const auto& [omega, v] : cal.value_at) cal_max = std::max(cal_max, v);
        double upper = frame_bounds_bruteforce(sys).upper;
        c.require(cal_max <= upper + 1e-10, "diagonal exceeded the upper bound");
        worst_gap = std::max(worst_gap, cal_max - upper);
    }
    // equality case: tight systems meet the bound exactly
    ConditionReport onb = calderon_report(onb_delta_system(make_group({12})));
    for (const auto& [omega, v] : onb.value_at) c.require(std::abs(v - 1.0) < 1e-12, "tight diagonal off 1");
    char buf[120];
    std::snprintf(buf, sizeof buf, "60 random systems, max(diagonal - B) = %.2e within 1e-10", worst_gap);
    if (c.ok) c.detail = buf;
    return c;
}

// ---------------------------------------------------------------------------
// 7: pointwise identities behind the equation engine.
Criterion criterion_pointwise_identities() {
    Criterion c;
    std::mt19937_64 rng(107);
    double worst_fiber = 0;
    for (int i = 0; i < 500; ++i) {
        Group g = random_group(rng, 36, true);
        Subgroup h = random_subgroup(rng, g);
        double res = fiber_identity_residual(g, h, random_function(rng, g), random_function(rng, g),
                                             random_function(rng, g), random_function(rng, g));
        worst_fiber = std::max(worst_fiber, res);
    }
    c.require(worst_fiber <= 1e-10, "fiberization residual too large");

    double worst_series = 0;
    for (int i = 0; i < 100; ++i) {
        Group g = random_group(rng, 32, true);
        GtiSystem sys_g = random_system(rng, g, 2, 2);
        GtiSystem sys_h = rerandomized(rng, sys_g);
        std::uniform_int_distribution<long long> pick(0, g.order() - 1);
        double res = wf_series_residual(sys_g, sys_h, random_function(rng, g), g.element_at(pick(rng)));
        worst_series = std::max(worst_series, res);
    }
    c.require(worst_series <= 1e-10, "series residual too large");
    char buf[120];
    std::snprintf(buf, sizeof buf, "500 fiber tuples (max %.1e), 100 series tuples (max %.1e)",
                  worst_fiber, worst_series);
    if (c.ok) c.detail = buf;
    return c;
}

// ---------------------------------------------------------------------------
// 8: continuous-domain worked examples, exact where certificates exist.
Criterion criterion_continuous_examples() {
    Criterion c;
    StepProfile shannon = make_real_profile({make_exact_piece(Rat(-1), Rat(-1, 2), Rat(1)),
                                             make_exact_piece(Rat(1, 2), Rat(1), Rat(1))});
    for (const auto& win : {std::pair{Rat(1, 64), Rat(64)}, {Rat(-64), Rat(-1, 64)}}) {
        WaveletTalpha diag = wavelet_talpha_dyadic(shannon, shannon, 0, win.first, win.second);
        StepDeviation dd = max_deviation(diag.profile, Rat(1));
        c.require(dd.all_exact && dd.value == 0, "dyadic diagonal not exactly 1");
    }
    for (long long alpha : {1LL, -1LL, 2LL, 3LL}) {
        WaveletTalpha off = wavelet_talpha_dyadic(shannon, shannon, alpha, Rat(1, 64), Rat(64));
        StepDeviation od = max_deviation(off.profile, Rat(0));
        c.require(od.all_exact && od.value == 0, "dyadic off-diagonal not exactly 0");
    }

    double amp = std::sqrt(0.5 / std::log(2.0));
    CalderonSides sides = calderon_continuous(make_real_profile(
        {make_piece(Rat(-2), Rat(-1), cplx(amp, 0)), make_piece(Rat(1), Rat(2), cplx(amp, 0))}));
    c.require(std::abs(sides.xi_positive - 1.0) <= 1e-12 && std::abs(sides.xi_negative - 1.0) <= 1e-12,
              "admissibility constant off 1");

    StepProfile box = make_real_profile({make_exact_piece(Rat(0), Rat(1), Rat(1))});
    JanssenResult unit = janssen_check(box, box, Rat(1), Rat(1));
    c.require(unit.pass && unit.exact && unit.max_residual == 0, "unit lattice reproduction not exact");
    JanssenResult fine = janssen_check(box, box, Rat(1), Rat(2));
    c.require(!fine.pass && fine.exact && std::abs(fine.max_residual - 1.0) < 1e-15,
              "refined lattice should fail with residual 1");
    if (c.ok) c.detail = "dyadic table exact, admissibility 1 within 1e-12, lattice rows exact";
    return c;
}

// ---------------------------------------------------------------------------
// 9: transform-layer identities at scale.
Criterion criterion_transform_identities() {
    Criterion c;
    std::mt19937_64 rng(109);
    double worst_pl = 0, worst_weil = 0;
    for (int i = 0; i < 1000; ++i) {
        Group g = random_group(rng, 64, true);
        GroupFunction f = random_function(rng, g);
        worst_pl = std::max(worst_pl, plancherel_residual(f) / (1.0 + norm_sq(f)));
    }
    for (int i = 0; i < 1000; ++i) {
        Group g = random_group(rng, 64, true);
        Subgroup h = random_subgroup(rng, g);
        worst_weil = std::max(worst_weil, weil_residual(g, h, random_function(rng, g)));
    }
    c.require(worst_pl <= 1e-12, "Plancherel residual too large");
    c.require(worst_weil <= 1e-12, "quotient integration residual too large");
    char buf[120];
    std::snprintf(buf, sizeof buf, "1000 Plancherel (max %.1e), 1000 quotient splits (max %.1e)",
                  worst_pl, worst_weil);
    if (c.ok) c.detail = buf;
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion (*fn)();
    };
    const Entry entries[] = {
        {"equation verdict matches dense oracle", criterion_equation_vs_oracle},
        {"layered tiling closed forms", criterion_tiling_closed_forms},
        {"reordered basis exact values", criterion_reordered_basis},
        {"separable lattice duality", criterion_separable_lattices},
        {"gabor route agreement", criterion_gabor_routes},
        {"diagonal sum bounded by B", criterion_diagonal_bound},
        {"pointwise identities", criterion_pointwise_identities},
        {"continuous worked examples", criterion_continuous_examples},
        {"transform identities", criterion_transform_identities},
    };
    int failures = 0;
    int index = 0;
    for (const Entry& e : entries) {
        ++index;
        Criterion c;
        try {
            c = e.fn();
        } catch (const std::exception& ex) {
            c.ok = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        if (!c.ok) ++failures;
        std::printf("[%s] %d/9 %s: %s\n", c.ok ? "PASS" : "FAIL", index, e.name, c.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
