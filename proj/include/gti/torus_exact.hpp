#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "gti/step_profile.hpp"

namespace gti {

/// One weighted generator pair of a torus layer; g and h are Fourier-side
/// profiles on [0,1).
struct TorusPair {
    StepProfile g;
    StepProfile h;
    Rat weight = Rat(1);
};

/// Layer whose translation subgroup has annihilator (1/perp_den) Z mod 1.
struct TorusLayer {
    BigInt perp_den;
    std::vector<TorusPair> pairs;
};

/// Exact piecewise evaluation of
///   t_alpha(omega) = sum over layers with alpha in the annihilator of
///     sum_p w_p conj(ghat_p(omega)) hhat_p(omega + alpha)
/// on the torus. A positive resolution adds the grid k/resolution to the
/// output breakpoints; values are unaffected, which the refinement-
/// invariance tests exploit.
inline ExactStep talpha_torus(const std::vector<TorusLayer>& layers, const Rat& alpha_in,
                              long resolution = 0) {
    Rat alpha = frac_mod1(alpha_in);
    ExactStep out;
    out.domain = Domain::torus;
    if (layers.empty()) {
        out.pieces.push_back(detail::ExactAccum{}.finish(Rat(0), Rat(1)));
        return out;
    }
    std::vector<const TorusLayer*> active;
    for (const TorusLayer& layer : layers) {
        if (layer.perp_den < 1) throw InvalidInput("annihilator denominator must be positive");
        for (const TorusPair& pair : layer.pairs)
            if (pair.g.domain != Domain::torus || pair.h.domain != Domain::torus)
                throw InvalidInput("torus evaluation needs torus-domain profiles");
        if (frac_mod1(alpha * Rat(layer.perp_den)) == 0) active.push_back(&layer);
    }
    if (active.empty())
        throw InvalidInput("alpha does not lie in any layer's annihilator");

    std::vector<Rat> cuts{Rat(0), Rat(1)};
    for (const TorusLayer* layer : active) {
        for (const TorusPair& pair : layer->pairs) {
            for (const Piece& p : pair.g.pieces) {
                cuts.push_back(p.lo);
                cuts.push_back(p.hi);
            }
            for (const Piece& p : pair.h.pieces) {
                cuts.push_back(frac_mod1(p.lo - alpha));
                cuts.push_back(frac_mod1(p.hi - alpha));
            }
        }
    }
    for (long r = 1; r < resolution; ++r) cuts.push_back(Rat(r, resolution));
    cuts = detail::sorted_unique(std::move(cuts));
    if (cuts.back() < 1) cuts.push_back(Rat(1));

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i] < cuts[i + 1])) continue;
        Rat mid = (cuts[i] + cuts[i + 1]) / 2;
        Rat shifted = frac_mod1(mid + alpha);
        detail::ExactAccum acc;
        for (const TorusLayer* layer : active)
            for (const TorusPair& pair : layer->pairs)
                acc.add_product(find_piece(pair.g, mid), find_piece(pair.h, shifted), pair.weight,
                                /*conj_first=*/true);
        out.pieces.push_back(acc.finish(cuts[i], cuts[i + 1]));
    }
    return out;
}

/// Torus layers of the layered dual-tiling family: layer j in 1..j_max has
/// annihilator (1/N^j) Z and N^j generators, each the indicator of one tile
/// [p/N^j, (p+1)/N^j) scaled so its squared modulus is (N-1)/N^j.
/// Generator counts grow like N^j, so this enumerated form is only for
/// small j; the closed forms below cover large j_max.
inline std::vector<TorusLayer> tiling_layers(long long n, long j_max) {
    if (n < 2) throw InvalidInput("tiling family needs N >= 2");
    if (j_max < 0) throw InvalidInput("negative layer count");
    std::vector<TorusLayer> layers;
    BigInt den(1);
    for (long j = 1; j <= j_max; ++j) {
        den *= n;
        TorusLayer layer;
        layer.perp_den = den;
        Rat sq = Rat(n - 1) / Rat(den);
        for (BigInt p = 0; p < den; ++p) {
            StepProfile tile = make_torus_profile({make_exact_piece(Rat(p, den), Rat(p + 1, den), sq)});
            layer.pairs.push_back({tile, tile, Rat(1)});
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

/// Closed-form report for the layered dual-tiling family, exact in rational
/// arithmetic for any j_max.
struct Ex0402eReport {
    long long n = 0;
    long j_max = 0;
    std::vector<Rat> lic_terms;        // constant N-1 per layer
    bool lic_divergent = false;
    std::vector<Rat> alpha_lic_terms;  // (N-1) N^-j per layer
    Rat alpha_lic_partial;
    Rat alpha_lic_tail;
    Rat cc_lower_partial;
    Rat cc_upper_partial;
    Rat cc_tail;
    Rat t0_partial;
    Rat t0_tail;
    bool offdiagonal_exact_zero = true;  // t_alpha = 0 for alpha != 0, by disjoint tiles
};

inline Ex0402eReport repro_ex_0402e(long long n, long j_max) {
    if (n < 2) throw InvalidInput("tiling family needs N >= 2");
    if (j_max < 0) throw InvalidInput("negative layer count");
    Ex0402eReport rep;
    rep.n = n;
    rep.j_max = j_max;
    Rat npow(1);
    Rat partial(0);
    for (long j = 1; j <= j_max; ++j) {
        npow *= n;
        rep.lic_terms.emplace_back(n - 1);
        Rat term = Rat(n - 1) / npow;
        rep.alpha_lic_terms.push_back(term);
        partial += term;
    }
    Rat tail = Rat(1) / npow;  // N^{-j_max}; equals 1 when j_max = 0
    rep.lic_divergent = j_max >= 1;
    rep.alpha_lic_partial = partial;
    rep.alpha_lic_tail = tail;
    rep.cc_lower_partial = partial;
    rep.cc_upper_partial = partial;
    rep.cc_tail = tail;
    rep.t0_partial = partial;
    rep.t0_tail = tail;
    return rep;
}

/// Closed-form t value for the reordered-basis family: layer j has a single
/// exponential generator of squared modulus N^-j delayed by tau_j, with
/// tau_j = 2^{j-1} - 1 in the N = 2 construction. alpha is k / N^{j_star}.
struct ReorderedOnbReport {
    long long n = 0;
    long long k = 0;
    long j_star = 0;
    cplx value{0.0, 0.0};
    std::optional<Rat> exact_re;
    bool characterization_applies = false;  // true only for N = 2, where the
                                            // dual alpha condition holds
};

inline ReorderedOnbReport repro_reordered_onb(long long n, long long k, long j_star) {
    if (n < 2) throw InvalidInput("reordered basis needs N >= 2");
    ReorderedOnbReport rep;
    rep.n = n;
    rep.k = k;
    rep.j_star = j_star;
    rep.characterization_applies = (n == 2);
    if (k == 0) {
        if (j_star != 0) throw InvalidInput("alpha = 0 must be given as k = 0, j_star = 0");
        // sum_{j >= 1} N^-j, the full geometric series
        rep.exact_re = Rat(1, n - 1);
        rep.value = cplx(to_double(*rep.exact_re), 0.0);
        return rep;
    }
    if (n != 2)
        throw InvalidInput("nonzero alpha is only constructed for N = 2");
    if (j_star < 1) throw InvalidInput("nonzero alpha needs j_star >= 1");
    if (k % 2 == 0) throw InvalidInput("k must be odd so that alpha = k/2^j_star is in lowest terms");

    // Collect exp(-2 pi i tau_j alpha) terms by exact phase turn. The tail
    // over j > j_star shares one phase and sums to the closed form 2^-j_star.
    Rat alpha = Rat(k) / rat_pow(Rat(2), j_star);
    std::map<Rat, Rat> coeff;
    Rat tau_jstar = rat_pow(Rat(2), j_star - 1) - 1;
    coeff[frac_mod1(-tau_jstar * alpha)] += rat_pow(Rat(2), -j_star);
    coeff[frac_mod1(alpha)] += rat_pow(Rat(2), -j_star);  // phase frac(k/2^j_star), all j > j_star

    // Fold opposite phases (turns that differ by exactly 1/2) in rationals.
    std::map<Rat, Rat> folded;
    for (const auto& [turn, c] : coeff) {
        if (c == 0) continue;
        Rat opposite = frac_mod1(turn + Rat(1, 2));
        auto hit = folded.find(opposite);
        if (hit != folded.end()) {
            hit->second -= c;
            if (hit->second == 0) folded.erase(hit);
        } else {
            folded[turn] += c;
            if (folded[turn] == 0) folded.erase(turn);
        }
    }
    bool real_axis = true;
    cplx value(0.0, 0.0);
    Rat exact(0);
    for (const auto& [turn, c] : folded) {
        value += to_double(c) * unit_phase(turn);
        if (turn == 0)
            exact += c;
        else if (turn == Rat(1, 2))
            exact -= c;
        else
            real_axis = false;
    }
    rep.value = value;
    if (real_axis) {
        rep.exact_re = exact;
        rep.value = cplx(to_double(exact), 0.0);
    }
    return rep;
}

/// Exact dyadic-wavelet t table on a window excluding zero:
///   t_alpha(omega) = sum over j with alpha in 2^j Z of
///     psihat(2^-j omega) conj(phihat(2^-j (omega + alpha))).
/// Profiles supported away from zero make the scale sum finite, so the tail
/// bound is exactly zero. An explicit j_range restricts the scan; scales
/// outside the support-determined range contribute nothing.
struct WaveletTalpha {
    ExactStep profile;
    long j_lo = 0;
    long j_hi = -1;  // empty scan when j_hi < j_lo
    double tail_bound = 0;
};

namespace detail {

inline bool touches_zero(const StepProfile& p) {
    for (const Piece& piece : p.pieces) {
        bool zero = piece.sq ? *piece.sq == 0 : (piece.val == cplx(0.0, 0.0));
        if (!zero && piece.lo <= 0 && 0 <= piece.hi) return true;
    }
    return false;
}

inline bool meets_scaled_window(const StepProfile& p, const Rat& lo, const Rat& hi, const Rat& pow2j) {
    // some nonzero piece intersects [lo,hi) / 2^j
    Rat slo = lo / pow2j, shi = hi / pow2j;
    for (const Piece& piece : p.pieces) {
        bool zero = piece.sq ? *piece.sq == 0 : (piece.val == cplx(0.0, 0.0));
        if (zero) continue;
        if (std::max(slo, piece.lo) < std::min(shi, piece.hi)) return true;
    }
    return false;
}

}  // namespace detail

inline WaveletTalpha wavelet_talpha_dyadic(const StepProfile& psi_hat, const StepProfile& phi_hat,
                                           long long alpha, const Rat& win_lo, const Rat& win_hi,
                                           std::optional<std::pair<long, long>> j_range = std::nullopt) {
    if (psi_hat.domain != Domain::real_line || phi_hat.domain != Domain::real_line)
        throw InvalidInput("dyadic evaluation needs real-line profiles");
    if (!(win_lo < win_hi)) throw InvalidInput("empty window");
    if (win_lo <= 0 && 0 <= win_hi)
        throw InvalidInput("window touches zero; truncation of the scale range is required");

    WaveletTalpha out;
    out.profile.domain = Domain::real_line;
    if (detail::touches_zero(psi_hat)) {
        if (!j_range)
            throw InvalidInput("profile support touches zero; an explicit scale range is required");
        out.tail_bound = std::numeric_limits<double>::infinity();
    }

    if (!support_hull(psi_hat) || !support_hull(phi_hat)) {
        out.profile.pieces.push_back(detail::ExactAccum{}.finish(win_lo, win_hi));
        return out;
    }

    long scan_lo = j_range ? j_range->first : -256;
    long scan_hi = j_range ? j_range->second : 256;
    std::vector<long> scales;
    long long v2 = 0;
    if (alpha != 0) {
        long long m = alpha < 0 ? -alpha : alpha;
        while (m % 2 == 0) { m /= 2; ++v2; }
    }
    for (long j = scan_lo; j <= scan_hi; ++j) {
        if (alpha != 0 && j >= 1 && j > v2) continue;  // alpha must lie in 2^j Z
        Rat pw = rat_pow(Rat(2), j);
        if (!detail::meets_scaled_window(psi_hat, win_lo, win_hi, pw)) continue;
        scales.push_back(j);
    }
    if (scales.empty()) {
        out.profile.pieces.push_back(detail::ExactAccum{}.finish(win_lo, win_hi));
        return out;
    }
    out.j_lo = scales.front();
    out.j_hi = scales.back();

    std::vector<Rat> cuts{win_lo, win_hi};
    for (long j : scales) {
        Rat pw = rat_pow(Rat(2), j);
        for (const Piece& p : psi_hat.pieces) {
            cuts.push_back(p.lo * pw);
            cuts.push_back(p.hi * pw);
        }
        for (const Piece& p : phi_hat.pieces) {
            cuts.push_back(p.lo * pw - alpha);
            cuts.push_back(p.hi * pw - alpha);
        }
    }
    std::vector<Rat> clipped;
    for (Rat& c : cuts)
        if (!(c < win_lo) && !(win_hi < c)) clipped.push_back(std::move(c));
    clipped = detail::sorted_unique(std::move(clipped));

    for (std::size_t i = 0; i + 1 < clipped.size(); ++i) {
        if (!(clipped[i] < clipped[i + 1])) continue;
        Rat mid = (clipped[i] + clipped[i + 1]) / 2;
        detail::ExactAccum acc;
        for (long j : scales) {
            Rat inv = rat_pow(Rat(2), -j);
            acc.add_product(find_piece(psi_hat, mid * inv), find_piece(phi_hat, (mid + alpha) * inv),
                            Rat(1), /*conj_first=*/false);
        }
        out.profile.pieces.push_back(acc.finish(clipped[i], clipped[i + 1]));
    }
    return out;
}

/// Scale-integral admissibility value, computed per xi sign side. For step
/// profiles both sides equal sum_i |c_i|^2 ln|hi_i / lo_i|; admissibility
/// requires both sides to equal 1.
struct CalderonSides {
    double xi_positive = 0;
    double xi_negative = 0;
    double min_side = 0;
    double max_side = 0;
};

inline CalderonSides calderon_continuous(const StepProfile& psi_hat) {
    if (psi_hat.domain != Domain::real_line) throw InvalidInput("admissibility integral needs a real-line profile");
    CalderonSides sides;
    for (const Piece& p : psi_hat.pieces) {
        if (p.lo <= 0 && 0 <= p.hi)
            throw InvalidInput("piece touches zero; the scale integral diverges");
        double m2 = p.sq ? to_double(*p.sq) : std::norm(p.val);
        double ratio = std::abs(to_double(p.hi) / to_double(p.lo));
        double term = m2 * std::abs(std::log(ratio));
        sides.xi_positive += term;
        sides.xi_negative += term;
    }
    sides.min_side = std::min(sides.xi_positive, sides.xi_negative);
    sides.max_side = std::max(sides.xi_positive, sides.xi_negative);
    return sides;
}

/// Lattice reproduction check on the real line:
///   sum_{lambda in aZ} conj(g(x - lambda)) h(x - lambda + alpha) = (1/a) delta_{alpha,0}
/// for x in [0,a) and alpha in (1/b)Z meeting the support difference set.
/// Everything is evaluated piecewise in exact rational arithmetic.
struct JanssenRow {
    Rat alpha;
    ExactStep sum;       // the lattice sum as a function of x on [0,a)
    Rat target;          // 1/a for alpha = 0, else 0
    double residual = 0;
    bool exact = true;
};

struct JanssenResult {
    bool pass = false;
    double max_residual = 0;
    bool exact = true;
    double tolerance = 0;
    std::vector<JanssenRow> rows;
};

inline JanssenResult janssen_check(const StepProfile& g, const StepProfile& h, const Rat& a,
                                   const Rat& b, double tol = 1e-10) {
    if (g.domain != Domain::real_line || h.domain != Domain::real_line)
        throw InvalidInput("lattice check needs compactly supported real-line profiles");
    if (a <= 0 || b <= 0) throw InvalidInput("lattice steps must be positive");
    JanssenResult result;
    result.tolerance = tol;

    auto hull_g = support_hull(g);
    auto hull_h = support_hull(h);
    std::vector<Rat> alphas{Rat(0)};
    if (hull_g && hull_h) {
        BigInt k_lo = -floor_to_int(-(b * (hull_h->first - hull_g->second)));
        BigInt k_hi = floor_to_int(b * (hull_h->second - hull_g->first));
        for (BigInt k = k_lo; k <= k_hi; ++k) {
            if (k == 0) continue;
            alphas.push_back(Rat(k) / b);
        }
        std::sort(alphas.begin(), alphas.end());
    }

    for (const Rat& alpha : alphas) {
        JanssenRow row;
        row.alpha = alpha;
        row.target = alpha == 0 ? Rat(1) / a : Rat(0);
        row.sum.domain = Domain::real_line;

        std::vector<BigInt> shifts;
        if (hull_g) {
            BigInt m_lo = floor_to_int(-hull_g->second / a) - 1;
            BigInt m_hi = floor_to_int((a - hull_g->first) / a) + 1;
            for (BigInt m = m_lo; m <= m_hi; ++m) shifts.push_back(m);
        }

        std::vector<Rat> cuts{Rat(0), a};
        for (const BigInt& m : shifts) {
            Rat ma = Rat(m) * a;
            for (const Piece& p : g.pieces) {
                cuts.push_back(p.lo + ma);
                cuts.push_back(p.hi + ma);
            }
            for (const Piece& p : h.pieces) {
                cuts.push_back(p.lo + ma - alpha);
                cuts.push_back(p.hi + ma - alpha);
            }
        }
        std::vector<Rat> clipped;
        for (Rat& c : cuts)
            if (!(c < 0) && !(a < c)) clipped.push_back(std::move(c));
        clipped = detail::sorted_unique(std::move(clipped));

        for (std::size_t i = 0; i + 1 < clipped.size(); ++i) {
            if (!(clipped[i] < clipped[i + 1])) continue;
            Rat mid = (clipped[i] + clipped[i + 1]) / 2;
            detail::ExactAccum acc;
            for (const BigInt& m : shifts) {
                Rat base = mid - Rat(m) * a;
                acc.add_product(find_piece(g, base), find_piece(h, base + alpha), Rat(1),
                                /*conj_first=*/true);
            }
            row.sum.pieces.push_back(acc.finish(clipped[i], clipped[i + 1]));
        }
        if (row.sum.pieces.empty())
            row.sum.pieces.push_back(detail::ExactAccum{}.finish(Rat(0), a));

        StepDeviation dev = max_deviation(row.sum, row.target);
        row.residual = dev.value;
        row.exact = dev.all_exact;
        result.max_residual = std::max(result.max_residual, row.residual);
        result.exact = result.exact && row.exact;
        result.rows.push_back(std::move(row));
    }
    result.pass = result.max_residual <= tol;
    return result;
}

}  // namespace gti
