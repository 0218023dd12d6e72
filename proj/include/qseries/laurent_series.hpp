#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseries/rational.hpp"

namespace qseries {

/// Exact truncated Laurent series: the coefficient of q^(min_exp + i) is
/// coeffs[i], exponents >= prec are unknown, exponents < min_exp are zero
/// (every series here has a finite lower tail by construction).
///
/// Values are immutable after construction; all operations are pure
/// functions, so series can be shared read-only across threads.
class LaurentSeries {
public:
    /// The canonical zero series: empty window, recorded truncation.
    static LaurentSeries zero(std::int64_t prec);
    static LaurentSeries one(std::int64_t prec);
    static LaurentSeries monomial(const Rational& c, std::int64_t exp, std::int64_t prec);
    /// prec is min_exp + coeffs.size().
    static LaurentSeries from_coeffs(std::int64_t min_exp, std::vector<Rational> coeffs);

    LaurentSeries() : min_exp_(0), prec_(0) {}

    std::int64_t min_exp() const { return min_exp_; }
    std::int64_t prec() const { return prec_; }
    std::int64_t window_size() const { return prec_ - min_exp_; }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// True when no stored coefficient is nonzero (includes the empty window).
    bool is_zero_window() const;

    /// Smallest exponent with a nonzero coefficient; nullopt for a zero window.
    std::optional<std::int64_t> valuation() const;

    /// Coefficient of q^e. Exponents below the window are zero; e >= prec
    /// raises PrecisionError.
    const Rational& coeff(std::int64_t e) const;

    /// Trims leading zero coefficients so coeffs()[0] != 0; an all-zero
    /// window collapses to the canonical zero with the same prec.
    LaurentSeries normalized() const;

    /// Restricts the window to exponents < new_prec (new_prec <= prec).
    LaurentSeries truncated(std::int64_t new_prec) const;

    std::string to_string() const;

private:
    LaurentSeries(std::int64_t min_exp, std::int64_t prec, std::vector<Rational> coeffs)
        : min_exp_(min_exp), prec_(prec), coeffs_(std::move(coeffs)) {}

    std::int64_t min_exp_;
    std::int64_t prec_;
    std::vector<Rational> coeffs_;

    friend LaurentSeries add(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries neg(const LaurentSeries&);
    friend LaurentSeries scale(const LaurentSeries&, const Rational&);
    friend LaurentSeries mul(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries invert(const LaurentSeries&);
    friend LaurentSeries shift(const LaurentSeries&, std::int64_t);
    friend LaurentSeries substitute_qpow(const LaurentSeries&, std::int64_t);
};

/// Coefficientwise sum on the common reliable window:
/// result min_exp = min of the two, result prec = min of the two.
LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries neg(const LaurentSeries& a);
LaurentSeries scale(const LaurentSeries& a, const Rational& c);

/// Schoolbook Cauchy product. With valuations v_a, v_b the result valuation
/// is v_a + v_b and result prec = min(a.prec + v_b, b.prec + v_a) — the
/// window on which the product is fully determined. A zero window counts as
/// "zero at least up to prec" for the purpose of that formula.
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);

/// Multiplicative inverse via the forward recurrence. Requires a nonzero
/// window. Result valuation is -v and result prec is a.prec - 2v, which is
/// exactly what makes mul(a, invert(a)) equal 1 on its propagated window.
LaurentSeries invert(const LaurentSeries& a);

/// Repeated squaring; negative exponents invert first.
LaurentSeries pow(const LaurentSeries& a, std::int64_t e);

/// Multiplies by q^k: both window bounds move by k.
LaurentSeries shift(const LaurentSeries& a, std::int64_t k);

/// q -> q^m (m >= 1): coefficient of q^n becomes coefficient of q^(mn),
/// gaps are exact zeros, prec scales to m*prec.
LaurentSeries substitute_qpow(const LaurentSeries& a, std::int64_t m);

/// Exact agreement on [lo, hi). Raises PrecisionError if either window does
/// not cover the range (prec < hi or min_exp > lo).
bool equal_on(const LaurentSeries& a, const LaurentSeries& b, std::int64_t lo, std::int64_t hi);

/// First exponent in [lo, hi) where the two differ, if any. Same window
/// requirements as equal_on.
std::optional<std::int64_t> first_difference(const LaurentSeries& a, const LaurentSeries& b,
                                             std::int64_t lo, std::int64_t hi);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return sub(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a) { return neg(a); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }

} // namespace qseries
