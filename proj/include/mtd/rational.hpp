#pragma once

// Exact rational arithmetic (GMP-backed) plus the parsing/formatting helpers
// shared by every module. Rationals are kept canonical: gcd(|num|, den) = 1,
// den > 0. mpq_class maintains this as long as values are built through the
// helpers below.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "mtd/errors.hpp"

namespace mtd {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw Error("rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Int& num, const Int& den = 1) {
    if (den == 0) throw Error("rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// 2^e, e may be negative.
inline Rational pow2(int e) {
    Int p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : rat(Int(1), p);
}

inline Int int_pow(long base, unsigned exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
    Rational r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// Canonical "num" or "num/den" text.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("parse_rational: empty string");
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("parse_rational: bad rational '" + s + "'");
    if (r.get_den() == 0) throw ParseError("parse_rational: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

// Nearest fraction k/max_den to x. Used when rationalizing sampled parameters.
inline Rational round_to_denominator(double x, long max_den) {
    double scaled = x * static_cast<double>(max_den);
    double k = std::nearbyint(scaled);
    return rat(static_cast<long>(k), max_den);
}

}  // namespace mtd
