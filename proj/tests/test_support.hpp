#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qseries/laurent_series.hpp"
#include "qseries/qexpr.hpp"

namespace qseries::test {

// Brute-force oracle for eta powers: multiply the finitely many binomials
// (1 - q^{mn}) with mn < prec through the generic ring ops, then take the
// power generically. Deliberately avoids the pentagonal fast path.
inline LaurentSeries brute_force_eta(std::int64_t m, std::int64_t e, std::int64_t prec) {
    LaurentSeries acc = LaurentSeries::one(prec);
    for (std::int64_t j = m; j < prec; j += m) {
        std::vector<Rational> c(static_cast<std::size_t>(prec));
        c[0] = 1;
        c[static_cast<std::size_t>(j)] = -1;
        acc = mul(acc, LaurentSeries::from_coeffs(0, std::move(c)));
    }
    return pow(acc, e);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }

    Rational rational() {
        std::int64_t num = range(-9, 9);
        std::int64_t den = range(0, 4) < 3 ? 1 : range(2, 3);
        return make_rational(num, den);
    }

private:
    std::mt19937_64 eng_;
};

inline LaurentSeries random_series(Rng& rng, bool invertible = false) {
    std::int64_t min_exp = rng.range(-6, 4);
    std::int64_t len = rng.range(1, 24);
    std::vector<Rational> coeffs(static_cast<std::size_t>(len));
    for (auto& c : coeffs) c = rng.rational();
    if (invertible && is_zero(coeffs[0])) coeffs[0] = Rational(1);
    return LaurentSeries::from_coeffs(min_exp, std::move(coeffs));
}

/// Coefficients equal on the intersection of the two windows.
inline bool same_on_common(const LaurentSeries& x, const LaurentSeries& y) {
    std::int64_t lo = std::max(x.min_exp(), y.min_exp());
    std::int64_t hi = std::min(x.prec(), y.prec());
    for (std::int64_t e = lo; e < hi; ++e)
        if (x.coeff(e) != y.coeff(e)) return false;
    return true;
}

/// Random tree over the full grammar image (may not be expandable).
inline QExprPtr random_tree(Rng& rng, int depth) {
    int pick = static_cast<int>(rng.range(0, depth <= 0 ? 5 : 9));
    switch (pick) {
        case 0: return QExpr::constant(Rational(rng.range(0, 9)));
        case 1: return QExpr::qpow(rng.range(-5, 6));
        case 2: return QExpr::eta(rng.range(1, 18));
        case 3: {
            std::int64_t m = rng.range(1, 12);
            return QExpr::residue_product(m, rng.range(1, m));
        }
        case 4:
            return rng.range(0, 1) ? QExpr::cubic_cf(rng.range(1, 3))
                                   : QExpr::level12_cf(rng.range(1, 3));
        case 5: return QExpr::neg(random_tree(rng, depth - 1));
        case 6:
        case 7: {
            std::vector<QExprPtr> children;
            std::int64_t n = rng.range(2, 4);
            for (std::int64_t i = 0; i < n; ++i) children.push_back(random_tree(rng, depth - 1));
            return pick == 6 ? QExpr::add(std::move(children)) : QExpr::mul(std::move(children));
        }
        default: return QExpr::pow(random_tree(rng, depth - 1), rng.range(-6, 6));
    }
}

/// Random tree that expands safely: negative powers only of unit-valuation
/// atoms with known nonzero leading coefficient.
inline QExprPtr random_safe_tree(Rng& rng, int depth) {
    int pick = static_cast<int>(rng.range(0, depth <= 0 ? 4 : 8));
    switch (pick) {
        case 0: return QExpr::constant(Rational(rng.range(1, 9)));
        case 1: return QExpr::qpow(rng.range(-3, 4));
        case 2: return QExpr::eta(rng.range(1, 12));
        case 3: return QExpr::cubic_cf(rng.range(1, 2));
        case 4: return QExpr::neg(random_safe_tree(rng, depth - 1));
        case 5:
        case 6: {
            std::vector<QExprPtr> children;
            std::int64_t n = rng.range(2, 3);
            for (std::int64_t i = 0; i < n; ++i)
                children.push_back(random_safe_tree(rng, depth - 1));
            return pick == 5 ? QExpr::add(std::move(children)) : QExpr::mul(std::move(children));
        }
        default: {
            // invertible base
            QExprPtr base = rng.range(0, 1) ? QExpr::eta(rng.range(1, 8))
                                            : QExpr::level12_cf(rng.range(1, 2));
            return QExpr::pow(base, rng.range(-3, 3));
        }
    }
}

} // namespace qseries::test
