#pragma once

#include <algorithm>
#include <map>

#include "gti/frame_oracle.hpp"
#include "gti/gti_system.hpp"
#include "gti/verdict.hpp"

namespace gti {

/// Cached Fourier data of a system: generator transforms, per-layer
/// annihilators with membership masks, and the union of all annihilators
/// (always including the identity character, which every duality verdict
/// must interrogate even for degenerate systems).
struct SystemSpectrum {
    Group dual;
    std::vector<std::vector<GroupFunction>> ghat;  // [layer][generator]
    std::vector<std::vector<double>> gen_weight;   // [layer][generator]
    std::vector<Subgroup> ann;                     // [layer]
    std::vector<std::vector<char>> ann_mask;       // [layer][dual index]
    std::vector<long long> alpha_union;            // sorted dual indices
};

inline SystemSpectrum make_spectrum(const GtiSystem& sys) {
    validate_system(sys);
    SystemSpectrum spec;
    spec.dual = sys.group.dual();
    std::vector<char> in_union(static_cast<std::size_t>(spec.dual.order()), 0);
    in_union[0] = 1;  // identity character
    for (const Layer& layer : sys.layers) {
        std::vector<GroupFunction> hats;
        std::vector<double> weights;
        for (const Generator& gen : layer.generators) {
            hats.push_back(dft(gen.fn));
            weights.push_back(to_double(gen.weight));
        }
        spec.ghat.push_back(std::move(hats));
        spec.gen_weight.push_back(std::move(weights));
        Subgroup perp = annihilator(sys.group, layer.gamma);
        std::vector<char> mask(static_cast<std::size_t>(spec.dual.order()), 0);
        for (long long idx : perp.element_indices) {
            mask[static_cast<std::size_t>(idx)] = 1;
            in_union[static_cast<std::size_t>(idx)] = 1;
        }
        spec.ann.push_back(std::move(perp));
        spec.ann_mask.push_back(std::move(mask));
    }
    for (long long i = 0; i < spec.dual.order(); ++i)
        if (in_union[static_cast<std::size_t>(i)]) spec.alpha_union.push_back(i);
    return spec;
}

/// Finite discrete local-integrability sum
/// sum_j sum_p w_p |Gamma_j_perp| norm^2(g_p), recorded in reports.
inline double discrete_lic_total(const GtiSystem& sys, const SystemSpectrum& spec) {
    double total = 0;
    for (std::size_t j = 0; j < sys.layers.size(); ++j) {
        double perp = static_cast<double>(spec.ann[j].size());
        for (std::size_t p = 0; p < sys.layers[j].generators.size(); ++p)
            total += spec.gen_weight[j][p] * perp * norm_sq(sys.layers[j].generators[p].fn);
    }
    return total;
}

inline cplx talpha_from_spectra(const SystemSpectrum& sg, const SystemSpectrum& sh,
                                long long alpha_idx, long long omega_idx) {
    cplx acc(0, 0);
    long long shifted = sg.dual.add_index(omega_idx, alpha_idx);
    for (std::size_t j = 0; j < sg.ghat.size(); ++j) {
        if (!sg.ann_mask[j][static_cast<std::size_t>(alpha_idx)]) continue;
        for (std::size_t p = 0; p < sg.ghat[j].size(); ++p)
            acc += sg.gen_weight[j][p] *
                   std::conj(sg.ghat[j][p].values[static_cast<std::size_t>(omega_idx)]) *
                   sh.ghat[j][p].values[static_cast<std::size_t>(shifted)];
    }
    return acc;
}

/// t_alpha(omega) = sum over layers whose annihilator contains alpha of
/// sum_p w_p conj(ghat_p(omega)) hhat_p(omega alpha). alpha must lie in the
/// annihilator union of the pair.
inline cplx talpha(const GtiSystem& sys_g, const GtiSystem& sys_h, const Element& alpha,
                   const Element& omega) {
    require_same_shape(sys_g, sys_h);
    SystemSpectrum sg = make_spectrum(sys_g);
    SystemSpectrum sh = make_spectrum(sys_h);
    long long ai = sg.dual.index_of(sg.dual.reduce(alpha));
    long long wi = sg.dual.index_of(sg.dual.reduce(omega));
    bool in_any = false;
    for (const auto& mask : sg.ann_mask)
        if (mask[static_cast<std::size_t>(ai)]) { in_any = true; break; }
    if (!in_any && ai != 0)
        throw InvalidInput("alpha lies outside the annihilator union of the system");
    return talpha_from_spectra(sg, sh, ai, wi);
}

namespace detail {
inline TAlphaReport talpha_table(const GtiSystem& sys_g, const GtiSystem& sys_h,
                                 double tol, std::string condition) {
    require_same_shape(sys_g, sys_h);
    SystemSpectrum sg = make_spectrum(sys_g);
    SystemSpectrum sh = make_spectrum(sys_h);
    TAlphaReport report;
    report.condition = std::move(condition);
    report.tolerance = tol;
    report.lic_sum_g = discrete_lic_total(sys_g, sg);
    report.lic_sum_h = discrete_lic_total(sys_h, sh);
    for (long long ai : sg.alpha_union) {
        bool diagonal = (ai == 0);
        for (long long wi = 0; wi < sg.dual.order(); ++wi) {
            cplx t = talpha_from_spectra(sg, sh, ai, wi);
            double res = std::abs(t - (diagonal ? cplx(1, 0) : cplx(0, 0)));
            report.entries.push_back({sg.dual.element_at(ai), sg.dual.element_at(wi), t, res});
            report.max_residual = std::max(report.max_residual, res);
        }
    }
    report.pass = report.max_residual <= tol;
    return report;
}
}  // namespace detail

/// Characterizing-equation verdict for a dual pair: pass iff
/// t_alpha(omega) = delta_{alpha,1} across the annihilator union and the
/// whole dual, within tol.
inline TAlphaReport verify_dual_talpha(const GtiSystem& sys_g, const GtiSystem& sys_h, double tol) {
    return detail::talpha_table(sys_g, sys_h, tol, "dual-talpha");
}

inline TAlphaReport verify_parseval_talpha(const GtiSystem& sys, double tol) {
    TAlphaReport report = detail::talpha_table(sys, sys, tol, "parseval-talpha");
    return report;
}

/// Time-side Gabor duality table over alpha in the annihilator of the
/// modulation subgroup (a subgroup of G) and all x in G:
///   s(Lambda) sum_{lambda} conj(g(x - lambda)) h(x - lambda + alpha) = delta_{alpha,0}.
inline TAlphaReport gabor_dual_time(const GaborSystem& sys, double tol) {
    validate_gabor(sys);
    const Group& g = sys.group;
    Group dual = g.dual();
    Subgroup perp = annihilator(dual, sys.gamma_hat);  // lives in G
    double lat = to_double(sys.lambda.weight);
    TAlphaReport report;
    report.condition = "gabor-dual-time";
    report.tolerance = tol;
    {
        GtiSystem tg = gabor_window_to_ti(sys, sys.g, GaborRoute::time);
        GtiSystem th = gabor_window_to_ti(sys, sys.h, GaborRoute::time);
        SystemSpectrum spec_g = make_spectrum(tg), spec_h = make_spectrum(th);
        report.lic_sum_g = discrete_lic_total(tg, spec_g);
        report.lic_sum_h = discrete_lic_total(th, spec_h);
    }
    for (long long ai : perp.element_indices) {
        Element alpha = g.element_at(ai);
        bool diagonal = g.is_identity(alpha);
        for (long long xi = 0; xi < g.order(); ++xi) {
            Element x = g.element_at(xi);
            cplx acc(0, 0);
            for (long long li : sys.lambda.element_indices) {
                Element base = g.sub(x, g.element_at(li));
                acc += std::conj(sys.g.at(base)) * sys.h.at(g.add(base, alpha));
            }
            acc *= lat;
            double res = std::abs(acc - (diagonal ? cplx(1, 0) : cplx(0, 0)));
            report.entries.push_back({alpha, x, acc, res});
            report.max_residual = std::max(report.max_residual, res);
        }
    }
    report.pass = report.max_residual <= tol;
    return report;
}

/// Frequency-side Gabor duality table over beta in the annihilator of the
/// translation subgroup and all omega in the dual:
///   s(Gamma) sum_{gamma} conj(ghat(omega gamma)) hhat(omega gamma beta) = delta_{beta,1}.
inline TAlphaReport gabor_dual_freq(const GaborSystem& sys, double tol) {
    validate_gabor(sys);
    Group dual = sys.group.dual();
    Subgroup perp = annihilator(sys.group, sys.lambda);  // lives in the dual
    GroupFunction ghat = dft(sys.g), hhat = dft(sys.h);
    double lat = to_double(sys.gamma_hat.weight);
    TAlphaReport report;
    report.condition = "gabor-dual-freq";
    report.tolerance = tol;
    {
        GtiSystem tg = gabor_window_to_ti(sys, sys.g, GaborRoute::frequency);
        GtiSystem th = gabor_window_to_ti(sys, sys.h, GaborRoute::frequency);
        SystemSpectrum spec_g = make_spectrum(tg), spec_h = make_spectrum(th);
        report.lic_sum_g = discrete_lic_total(tg, spec_g);
        report.lic_sum_h = discrete_lic_total(th, spec_h);
    }
    for (long long bi : perp.element_indices) {
        Element beta = dual.element_at(bi);
        bool diagonal = dual.is_identity(beta);
        for (long long wi = 0; wi < dual.order(); ++wi) {
            cplx acc(0, 0);
            for (long long gi : sys.gamma_hat.element_indices) {
                long long at = dual.add_index(wi, gi);
                acc += std::conj(ghat.values[static_cast<std::size_t>(at)]) *
                       hhat.values[static_cast<std::size_t>(dual.add_index(at, bi))];
            }
            acc *= lat;
            double res = std::abs(acc - (diagonal ? cplx(1, 0) : cplx(0, 0)));
            report.entries.push_back({beta, dual.element_at(wi), acc, res});
            report.max_residual = std::max(report.max_residual, res);
        }
    }
    report.pass = report.max_residual <= tol;
    return report;
}

/// Plain (unweighted) frame operator of the separable lattice
/// {E_{mb} T_{na}}_{m<M, n<N} on Z_d, assembled literally.
inline Mat finite_gabor_plain_operator(const std::vector<cplx>& g, const std::vector<cplx>& h,
                                       long long d, long long a, long long b) {
    long long n_count = d / a, m_count = d / b;
    Mat s = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Group z_d({d}, Rat(1));
    for (long long m = 0; m < m_count; ++m) {
        for (long long n = 0; n < n_count; ++n) {
            Vec ag(static_cast<Eigen::Index>(d)), ah(static_cast<Eigen::Index>(d));
            for (long long x = 0; x < d; ++x) {
                cplx phase = z_d.character({m * b}, {x});
                long long src = ((x - n * a) % d + d) % d;
                ag(static_cast<Eigen::Index>(x)) = phase * g[static_cast<std::size_t>(src)];
                ah(static_cast<Eigen::Index>(x)) = phase * h[static_cast<std::size_t>(src)];
            }
            s.noalias() += ah * ag.adjoint();
        }
    }
    return s;
}

/// Painless-style duality check for g, h in C^d with aN = bM = d:
/// the condition
///   sum_{k<N} conj(g(x - nM - ka)) h(x - ka) = (1/M) delta_{n,0}
/// for x in {0..a-1}, n in {0..b-1}, equivalent to the plain reproducing
/// formula over the (a,b) lattice. The plain-operator residual is attached.
inline Verdict finite_gabor_check(const std::vector<cplx>& g, const std::vector<cplx>& h,
                                  long long d, long long a, long long b, double tol) {
    if (d <= 0 || a <= 0 || b <= 0) throw InvalidInput("lattice parameters must be positive");
    if (d % a != 0 || d % b != 0) throw InvalidInput("a and b must divide d");
    if (static_cast<long long>(g.size()) != d || static_cast<long long>(h.size()) != d)
        throw InvalidInput("window length does not match d");
    long long n_shifts = d / a;  // N
    long long m_mods = d / b;    // M
    double target = 1.0 / static_cast<double>(m_mods);
    double char_residual = 0;
    for (long long x = 0; x < a; ++x) {
        for (long long n = 0; n < b; ++n) {
            cplx acc(0, 0);
            for (long long k = 0; k < n_shifts; ++k) {
                long long ig = ((x - n * m_mods - k * a) % d + d) % d;
                long long ih = ((x - k * a) % d + d) % d;
                acc += std::conj(g[static_cast<std::size_t>(ig)]) * h[static_cast<std::size_t>(ih)];
            }
            double res = std::abs(acc - (n == 0 ? cplx(target, 0) : cplx(0, 0)));
            char_residual = std::max(char_residual, res);
        }
    }
    Mat s = finite_gabor_plain_operator(g, h, d, a, b);
    double brute = max_abs_entry(s - Mat::Identity(s.rows(), s.cols()));
    Verdict v;
    v.condition = "finite-gabor";
    v.tolerance = tol;
    v.max_residual = char_residual;
    v.pass = char_residual <= tol;
    v.extras.emplace_back("brute_residual", brute);
    v.extras.emplace_back("brute_pass", brute <= tol ? 1.0 : 0.0);
    return v;
}

/// Residual of the generalized Fourier-series identity at the point x:
/// the quadratic form <S T_x f, T_x f> against
/// sum_alpha alpha(x) w_dual sum_omega fhat(omega) conj(fhat(omega alpha)) t_alpha(omega).
inline double wf_series_residual(const GtiSystem& sys_g, const GtiSystem& sys_h,
                                 const GroupFunction& f, const Element& x) {
    require_same_shape(sys_g, sys_h);
    const Group& g = sys_g.group;
    if (!(f.group == g)) throw InvalidInput("test function lives on a different group");
    Mat s = frame_operator_matrix(sys_g, sys_h);
    Vec u = detail::to_vec(translate(f, x));
    cplx lhs = (u.adjoint() * (s * u))(0, 0) * to_double(g.weight());

    SystemSpectrum sg = make_spectrum(sys_g);
    SystemSpectrum sh = make_spectrum(sys_h);
    GroupFunction fhat = dft(f);
    Group dual = sg.dual;
    Element xr = g.reduce(x);
    cplx rhs(0, 0);
    for (long long ai : sg.alpha_union) {
        cplx what(0, 0);
        for (long long wi = 0; wi < dual.order(); ++wi)
            what += fhat.values[static_cast<std::size_t>(wi)] *
                    std::conj(fhat.values[static_cast<std::size_t>(dual.add_index(wi, ai))]) *
                    talpha_from_spectra(sg, sh, ai, wi);
        what *= to_double(dual.weight());
        rhs += dual.character(dual.element_at(ai), xr) * what;
    }
    return std::abs(lhs - rhs);
}

}  // namespace gti
