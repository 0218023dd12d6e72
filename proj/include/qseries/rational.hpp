#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "qseries/errors.hpp"

namespace qseries {

// Exact arithmetic everywhere: coefficients are GMP rationals in canonical
// form, integers are GMP integers. No floating point anywhere in the library.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& x) {
    return mpz_cmp_ui(mpq_denref(x.get_mpq_t()), 1) == 0;
}

inline bool is_zero(const Rational& x) { return mpq_sgn(x.get_mpq_t()) == 0; }

/// num/den reduced to lowest terms, den > 0.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (mpz_sgn(den.get_mpz_t()) == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

/// Renders "p" for integers and "p/q" otherwise; never a decimal.
inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses "p" or "p/q" (arbitrary precision); rejects anything else.
Rational rational_from_string(const std::string& text);

/// b^e for e >= 0.
Integer ipow(const Integer& base, unsigned long e);

/// 3^e, the base every index map in this domain is built from.
Integer pow3(unsigned long e);

// Accumulation helpers used by the series inner loops. Semantically identical
// to the mpq operators; the denominator==1 paths skip mpq canonicalization,
// which dominates the cost of the long integer-valued convolutions.

inline void acc_add(Rational& a, const Rational& b) {
    if (is_integer(a) && is_integer(b)) {
        mpz_add(mpq_numref(a.get_mpq_t()), mpq_numref(a.get_mpq_t()), mpq_numref(b.get_mpq_t()));
    } else {
        a += b;
    }
}

inline void acc_sub(Rational& a, const Rational& b) {
    if (is_integer(a) && is_integer(b)) {
        mpz_sub(mpq_numref(a.get_mpq_t()), mpq_numref(a.get_mpq_t()), mpq_numref(b.get_mpq_t()));
    } else {
        a -= b;
    }
}

/// a += x*y
inline void acc_addmul(Rational& a, const Rational& x, const Rational& y) {
    if (is_integer(a) && is_integer(x) && is_integer(y)) {
        mpz_addmul(mpq_numref(a.get_mpq_t()), mpq_numref(x.get_mpq_t()), mpq_numref(y.get_mpq_t()));
    } else {
        a += x * y;
    }
}

/// a -= x*y
inline void acc_submul(Rational& a, const Rational& x, const Rational& y) {
    if (is_integer(a) && is_integer(x) && is_integer(y)) {
        mpz_submul(mpq_numref(a.get_mpq_t()), mpq_numref(x.get_mpq_t()), mpq_numref(y.get_mpq_t()));
    } else {
        a -= x * y;
    }
}

} // namespace qseries
