#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "gti/function.hpp"
#include "gti/rational.hpp"

namespace gti {

enum class Domain { torus, real_line };

/// One constant piece of a step function on [lo, hi). When sq is set the
/// value is declared to be the nonnegative real square root of sq, which
/// lets products of tagged pieces be carried in exact rational arithmetic.
struct Piece {
    Rat lo;
    Rat hi;
    cplx val{0.0, 0.0};
    std::optional<Rat> sq;
};

inline Piece make_piece(Rat lo, Rat hi, cplx val) { return {std::move(lo), std::move(hi), val, std::nullopt}; }

inline Piece make_exact_piece(Rat lo, Rat hi, Rat sq) {
    if (sq < 0) throw InvalidInput("squared modulus tag must be nonnegative");
    Piece p;
    p.lo = std::move(lo);
    p.hi = std::move(hi);
    p.val = cplx(std::sqrt(to_double(sq)), 0.0);
    p.sq = std::move(sq);
    return p;
}

/// Piecewise-constant profile with exact rational breakpoints. Torus
/// profiles live on [0,1) and are normalized to cover it (gaps are filled
/// with explicit zero pieces); real-line profiles are compactly supported
/// and implicitly zero outside the listed pieces.
struct StepProfile {
    Domain domain = Domain::real_line;
    std::vector<Piece> pieces;
};

namespace detail {
inline void sort_and_check(std::vector<Piece>& pieces) {
    for (const Piece& p : pieces)
        if (!(p.lo < p.hi)) throw InvalidInput("piece must satisfy lo < hi");
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
        if (pieces[i + 1].lo < pieces[i].hi) throw InvalidInput("pieces overlap");
}
}  // namespace detail

inline StepProfile make_torus_profile(std::vector<Piece> pieces) {
    detail::sort_and_check(pieces);
    StepProfile out;
    out.domain = Domain::torus;
    Rat cursor(0);
    for (Piece& p : pieces) {
        if (p.lo < 0 || p.hi > 1) throw InvalidInput("torus piece outside [0,1)");
        if (cursor < p.lo) out.pieces.push_back(make_exact_piece(cursor, p.lo, Rat(0)));
        cursor = p.hi;
        out.pieces.push_back(std::move(p));
    }
    if (cursor < 1) out.pieces.push_back(make_exact_piece(cursor, Rat(1), Rat(0)));
    return out;
}

inline StepProfile make_real_profile(std::vector<Piece> pieces) {
    detail::sort_and_check(pieces);
    StepProfile out;
    out.domain = Domain::real_line;
    out.pieces = std::move(pieces);
    return out;
}

/// Piece containing x, or nullptr where the profile is (implicitly) zero.
inline const Piece* find_piece(const StepProfile& p, const Rat& x) {
    auto it = std::upper_bound(p.pieces.begin(), p.pieces.end(), x,
                               [](const Rat& v, const Piece& piece) { return v < piece.lo; });
    if (it == p.pieces.begin()) return nullptr;
    --it;
    return x < it->hi ? &*it : nullptr;
}

inline cplx eval_profile(const StepProfile& p, const Rat& x) {
    Rat arg = p.domain == Domain::torus ? frac_mod1(x) : x;
    const Piece* piece = find_piece(p, arg);
    return piece ? piece->val : cplx(0.0, 0.0);
}

/// Hull [lo, hi] of the pieces with nonzero value; nullopt for the zero profile.
inline std::optional<std::pair<Rat, Rat>> support_hull(const StepProfile& p) {
    std::optional<std::pair<Rat, Rat>> hull;
    for (const Piece& piece : p.pieces) {
        bool zero = piece.sq ? *piece.sq == 0 : (piece.val == cplx(0.0, 0.0));
        if (zero) continue;
        if (!hull)
            hull = {piece.lo, piece.hi};
        else {
            hull->first = std::min(hull->first, piece.lo);
            hull->second = std::max(hull->second, piece.hi);
        }
    }
    return hull;
}

/// One piece of a computed exact step function. exact_re, when present,
/// certifies that the value is that rational with imaginary part zero.
struct ExactPiece {
    Rat lo;
    Rat hi;
    cplx val{0.0, 0.0};
    std::optional<Rat> exact_re;
};

struct ExactStep {
    Domain domain = Domain::real_line;
    std::vector<ExactPiece> pieces;
};

/// Largest |value - target| over the pieces, exact where certificates allow.
struct StepDeviation {
    double value = 0;
    bool all_exact = true;
};

inline StepDeviation max_deviation(const ExactStep& f, const Rat& target) {
    StepDeviation dev;
    double t = to_double(target);
    for (const ExactPiece& p : f.pieces) {
        double d;
        if (p.exact_re) {
            Rat diff = *p.exact_re - target;
            if (diff < 0) diff = -diff;
            d = to_double(diff);
        } else {
            dev.all_exact = false;
            d = std::abs(p.val - cplx(t, 0.0));
        }
        dev.value = std::max(dev.value, d);
    }
    return dev;
}

namespace detail {

/// Accumulator for sums of products of tagged pieces. The exact track
/// survives only while every added product has a rational square root.
struct ExactAccum {
    cplx val{0.0, 0.0};
    std::optional<Rat> exact{Rat(0)};

    void add_product(const Piece* a, const Piece* b, const Rat& weight, bool conj_first) {
        cplx av = a ? a->val : cplx(0.0, 0.0);
        cplx bv = b ? b->val : cplx(0.0, 0.0);
        cplx prod = conj_first ? std::conj(av) * bv : av * std::conj(bv);
        val += to_double(weight) * prod;
        if (!exact) return;
        std::optional<Rat> asq = a ? a->sq : std::optional<Rat>(Rat(0));
        std::optional<Rat> bsq = b ? b->sq : std::optional<Rat>(Rat(0));
        if (!asq || !bsq) {
            exact.reset();
            return;
        }
        std::optional<Rat> root = sqrt_exact(*asq * *bsq);
        if (!root) {
            exact.reset();
            return;
        }
        *exact += weight * *root;
    }

    ExactPiece finish(Rat lo, Rat hi) const {
        ExactPiece piece;
        piece.lo = std::move(lo);
        piece.hi = std::move(hi);
        if (exact) {
            piece.exact_re = *exact;
            piece.val = cplx(to_double(*exact), 0.0);
        } else {
            piece.val = val;
        }
        return piece;
    }
};

inline std::vector<Rat> sorted_unique(std::vector<Rat> cuts) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace detail

}  // namespace gti
