#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <string>

#include "gti/errors.hpp"

namespace gti {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

namespace detail {
inline BigInt parse_big_int(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty integer in rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidInput("sign without digits in rational literal");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw InvalidInput("invalid character in rational literal: \"" + s + "\"");
    return BigInt(s);
}
}  // namespace detail

/// Parses "p" or "p/q" with optional leading sign. No whitespace allowed.
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(detail::parse_big_int(s));
    BigInt num = detail::parse_big_int(s.substr(0, slash));
    BigInt den = detail::parse_big_int(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in rational literal: \"" + s + "\"");
    return Rat(num, den);
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string format_rational(const Rat& r) {
    BigInt den = rat_den(r);
    std::string out = rat_num(r).str();
    if (den != 1) out += "/" + den.str();
    return out;
}

/// base^exp with integer exp of either sign; base must be nonzero for exp < 0.
inline Rat rat_pow(const Rat& base, long exp) {
    if (exp < 0 && base == 0) throw InvalidInput("zero base with negative exponent");
    Rat acc(1);
    Rat b = exp < 0 ? Rat(rat_den(base), rat_num(base)) : base;
    unsigned long n = exp < 0 ? static_cast<unsigned long>(-(exp + 1)) + 1ul
                              : static_cast<unsigned long>(exp);
    while (n) {
        if (n & 1ul) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline BigInt floor_to_int(const Rat& r) {
    BigInt q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

/// r reduced into [0,1) by subtracting the integer floor.
inline Rat frac_mod1(const Rat& r) { return r - Rat(floor_to_int(r)); }

/// Exact square root when r is a perfect square of a rational, nullopt otherwise.
inline std::optional<Rat> sqrt_exact(const Rat& r) {
    if (r < 0) return std::nullopt;
    BigInt num = rat_num(r), den = rat_den(r);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
}

/// exp(2*pi*i*turns) with the angle reduced mod 1 in exact arithmetic first.
/// Quarter-turn values come out bit-exact.
inline std::complex<double> unit_phase(const Rat& turns) {
    Rat t = frac_mod1(turns);
    BigInt den = rat_den(t), num = rat_num(t);
    if (den == 1) return {1.0, 0.0};
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return num == 1 ? std::complex<double>{0.0, 1.0}
                                  : std::complex<double>{0.0, -1.0};
    double theta = 6.283185307179586476925286766559 * to_double(t);
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace gti
