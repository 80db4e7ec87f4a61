#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gti/gti_system.hpp"
#include "gti/verdict.hpp"

namespace gti {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr long long kDefaultOracleOrderCap = 4096;

namespace detail {
inline Vec to_vec(const GroupFunction& f) {
    Vec v(static_cast<Eigen::Index>(f.values.size()));
    for (std::size_t i = 0; i < f.values.size(); ++i) v(static_cast<Eigen::Index>(i)) = f.values[i];
    return v;
}
}  // namespace detail

/// Dense matrix of the mixed frame operator
///   S f = sum_j sum_p w_p s(Gamma_j) sum_{gamma} <f, T_gamma g_p> T_gamma h_p
/// over the delta basis of the group. Hermitian PSD when sys_h == sys_g.
inline Mat frame_operator_matrix(const GtiSystem& sys_g, const GtiSystem& sys_h,
                                 long long order_cap = kDefaultOracleOrderCap) {
    validate_system(sys_g);
    validate_system(sys_h);
    require_same_shape(sys_g, sys_h);
    const Group& g = sys_g.group;
    if (g.order() > order_cap) throw InvalidInput("group order exceeds the dense-oracle cap");
    const auto n = static_cast<Eigen::Index>(g.order());
    double w_point = to_double(g.weight());
    Mat s = Mat::Zero(n, n);
    for (std::size_t j = 0; j < sys_g.layers.size(); ++j) {
        const Layer& lg = sys_g.layers[j];
        const Layer& lh = sys_h.layers[j];
        double lattice = to_double(lg.gamma.weight);
        for (std::size_t p = 0; p < lg.generators.size(); ++p) {
            double coeff = to_double(lg.generators[p].weight) * lattice * w_point;
            for (long long gi : lg.gamma.element_indices) {
                Element gamma = g.element_at(gi);
                Vec tg = detail::to_vec(translate(lg.generators[p].fn, gamma));
                Vec th = detail::to_vec(translate(lh.generators[p].fn, gamma));
                s.noalias() += coeff * (th * tg.adjoint());
            }
        }
    }
    return s;
}

/// Exact frame bounds on a finite group: the eigenvalue extremes of the
/// Hermitian frame-operator matrix.
inline FrameBounds frame_bounds_bruteforce(const GtiSystem& sys,
                                           long long order_cap = kDefaultOracleOrderCap) {
    Mat s = frame_operator_matrix(sys, sys, order_cap);
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    const auto& ev = es.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

inline double max_abs_entry(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// Duality test against the identity: pass when every entry of S - I is
/// within tol. The spectral norm of the deviation is reported alongside.
inline Verdict is_dual_bruteforce(const GtiSystem& sys_g, const GtiSystem& sys_h, double tol,
                                  long long order_cap = kDefaultOracleOrderCap) {
    Mat s = frame_operator_matrix(sys_g, sys_h, order_cap);
    Mat dev = s - Mat::Identity(s.rows(), s.cols());
    Verdict v;
    v.condition = "dual-bruteforce";
    v.tolerance = tol;
    v.max_residual = max_abs_entry(dev);
    v.spectral_residual = dev.jacobiSvd().singularValues()(0);
    v.pass = v.max_residual <= tol;
    return v;
}

/// Residual of the fiberization identity for a subgroup H:
///   s(H) sum_{h in H} <f1, T_h phi> <T_h psi, f2>
///     = w_dual sum_omega sum_{alpha in H_perp} f1hat(omega) conj(f2hat(omega alpha))
///       conj(phihat(omega)) psihat(omega alpha).
inline double fiber_identity_residual(const Group& g, const Subgroup& h, const GroupFunction& f1,
                                      const GroupFunction& f2, const GroupFunction& phi,
                                      const GroupFunction& psi) {
    cplx lhs(0, 0);
    for (long long hi : h.element_indices) {
        Element t = g.element_at(hi);
        lhs += inner(f1, translate(phi, t)) * inner(translate(psi, t), f2);
    }
    lhs *= to_double(h.weight);

    Group dual = g.dual();
    Subgroup perp = annihilator(g, h);
    GroupFunction f1h = dft(f1), f2h = dft(f2), phih = dft(phi), psih = dft(psi);
    cplx rhs(0, 0);
    for (long long wi = 0; wi < dual.order(); ++wi) {
        for (long long ai : perp.element_indices) {
            long long shifted = dual.add_index(wi, ai);
            rhs += f1h.values[static_cast<std::size_t>(wi)] *
                   std::conj(f2h.values[static_cast<std::size_t>(shifted)]) *
                   std::conj(phih.values[static_cast<std::size_t>(wi)]) *
                   psih.values[static_cast<std::size_t>(shifted)];
        }
    }
    rhs *= to_double(dual.weight());
    return std::abs(lhs - rhs);
}

}  // namespace gti
