#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "gti/errors.hpp"
#include "gti/rational.hpp"

namespace gti {

/// Element of a finite abelian group in coordinate form, one entry per
/// invariant factor. Also used for characters of the dual group.
using Element = std::vector<long long>;

namespace detail {

inline std::map<long long, std::vector<int>> prime_power_table(const std::vector<long long>& factors) {
    std::map<long long, std::vector<int>> table;
    for (long long d : factors) {
        long long m = d;
        for (long long p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            table[p].push_back(e);
        }
        if (m > 1) table[m].push_back(1);
    }
    return table;
}

/// Rebuilds a divisor chain d1 | d2 | ... | dk from an arbitrary factor list
/// by redistributing prime powers, largest exponents into the last factor.
inline std::vector<long long> invariant_factor_chain(const std::vector<long long>& factors) {
    auto table = prime_power_table(factors);
    std::size_t slots = 0;
    for (auto& [p, exps] : table) {
        std::sort(exps.begin(), exps.end(), std::greater<int>());
        slots = std::max(slots, exps.size());
    }
    if (slots == 0) return {1};
    std::vector<long long> chain(slots, 1);
    for (auto& [p, exps] : table)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            long long pw = 1;
            for (int e = 0; e < exps[i]; ++e) pw *= p;
            chain[slots - 1 - i] *= pw;
        }
    return chain;
}

}  // namespace detail

/// Finite abelian group given by invariant factors d1 | d2 | ... | dk together
/// with the Haar measure of a single point. The dual group carries the unique
/// weight that makes the Plancherel theorem exact.
class Group {
public:
    Group() : factors_{1}, weight_(1), order_(1) { build_roots(); }

    Group(std::vector<long long> factors, Rat weight) : weight_(std::move(weight)) {
        if (factors.empty()) throw InvalidInput("group needs at least one factor");
        for (long long d : factors)
            if (d <= 0) throw InvalidInput("non-positive group factor");
        if (weight_ <= 0) throw InvalidInput("group weight must be positive");
        bool chain = true;
        for (std::size_t i = 0; i + 1 < factors.size(); ++i)
            if (factors[i + 1] % factors[i] != 0) { chain = false; break; }
        factors_ = chain ? std::move(factors) : detail::invariant_factor_chain(factors);
        order_ = 1;
        for (long long d : factors_) order_ *= d;
        build_roots();
    }

    const std::vector<long long>& factors() const { return factors_; }
    const Rat& weight() const { return weight_; }
    long long order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }

    Rat dual_weight() const { return Rat(1) / (weight_ * Rat(order_)); }
    Group dual() const { return Group(factors_, dual_weight()); }

    bool same_factors(const Group& other) const { return factors_ == other.factors_; }
    bool operator==(const Group& other) const {
        return factors_ == other.factors_ && weight_ == other.weight_;
    }

    /// Reduces arbitrary integer coordinates into the canonical ranges.
    Element reduce(Element x) const {
        require_rank(x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] %= factors_[i];
            if (x[i] < 0) x[i] += factors_[i];
        }
        return x;
    }

    Element identity() const { return Element(rank(), 0); }

    Element add(const Element& a, const Element& b) const {
        require_rank(a);
        require_rank(b);
        Element out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[i] = (a[i] + b[i]) % factors_[i];
        return out;
    }

    Element neg(const Element& a) const {
        require_rank(a);
        Element out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[i] = a[i] ? factors_[i] - a[i] : 0;
        return out;
    }

    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

    bool is_identity(const Element& a) const {
        for (long long c : a)
            if (c) return false;
        return true;
    }

    /// Row-major index over the coordinates, first coordinate slowest.
    long long index_of(const Element& x) const {
        require_rank(x);
        long long idx = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] < 0 || x[i] >= factors_[i]) throw InvalidInput("coordinate out of range");
            idx = idx * factors_[i] + x[i];
        }
        return idx;
    }

    Element element_at(long long idx) const {
        if (idx < 0 || idx >= order_) throw InvalidInput("element index out of range");
        Element x(rank());
        for (std::size_t i = rank(); i-- > 0;) {
            x[i] = idx % factors_[i];
            idx /= factors_[i];
        }
        return x;
    }

    long long add_index(long long a, long long b) const {
        return index_of(add(element_at(a), element_at(b)));
    }

    long long neg_index(long long a) const { return index_of(neg(element_at(a))); }

    /// Value of the character labelled by omega at the point x:
    /// exp(2*pi*i * sum_i omega_i x_i / d_i).
    std::complex<double> character(const Element& omega, const Element& x) const {
        require_rank(omega);
        require_rank(x);
        std::complex<double> v(1.0, 0.0);
        for (std::size_t i = 0; i < rank(); ++i) {
            long long r = (omega[i] * x[i]) % factors_[i];
            v *= roots_[i][static_cast<std::size_t>(r)];
        }
        return v;
    }

    /// True when the character labelled by omega is identically 1 on x,
    /// decided in exact integer arithmetic.
    bool character_is_one(const Element& omega, const Element& x) const {
        require_rank(omega);
        require_rank(x);
        long long l = lcm_;
        long long acc = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            long long term = ((omega[i] * x[i]) % factors_[i]) * (l / factors_[i]) % l;
            acc = (acc + term) % l;
        }
        return acc == 0;
    }

private:
    void require_rank(const Element& x) const {
        if (x.size() != rank()) throw InvalidInput("element rank mismatch");
    }

    void build_roots() {
        lcm_ = 1;
        roots_.clear();
        roots_.reserve(rank());
        for (long long d : factors_) {
            lcm_ = std::lcm(lcm_, d);
            std::vector<std::complex<double>> row(static_cast<std::size_t>(d));
            for (long long r = 0; r < d; ++r)
                row[static_cast<std::size_t>(r)] = unit_phase(Rat(r, d));
            roots_.push_back(std::move(row));
        }
    }

    std::vector<long long> factors_;
    Rat weight_;
    long long order_;
    long long lcm_ = 1;
    std::vector<std::vector<std::complex<double>>> roots_;
};

inline Group make_group(std::vector<long long> invariant_factors, Rat haar_weight = Rat(1)) {
    return Group(std::move(invariant_factors), std::move(haar_weight));
}

}  // namespace gti
