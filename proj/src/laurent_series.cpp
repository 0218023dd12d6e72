#include "qseries/laurent_series.hpp"

#include <algorithm>
#include <sstream>

#include "qseries/errors.hpp"

namespace qseries {

namespace {
const Rational kZero(0);

// "Zero at least up to prec": the valuation floor used by the mul/invert
// precision rules when a window carries no nonzero coefficient.
std::int64_t valuation_floor(const LaurentSeries& s) {
    auto v = s.valuation();
    return v ? *v : s.prec();
}
} // namespace

LaurentSeries LaurentSeries::zero(std::int64_t prec) { return {prec, prec, {}}; }

LaurentSeries LaurentSeries::one(std::int64_t prec) { return monomial(Rational(1), 0, prec); }

LaurentSeries LaurentSeries::monomial(const Rational& c, std::int64_t exp, std::int64_t prec) {
    if (exp >= prec) throw PrecisionError("monomial exponent outside window", exp + 1, prec);
    std::vector<Rational> coeffs(static_cast<std::size_t>(prec - exp));
    coeffs[0] = c;
    return {exp, prec, std::move(coeffs)};
}

LaurentSeries LaurentSeries::from_coeffs(std::int64_t min_exp, std::vector<Rational> coeffs) {
    std::int64_t prec = min_exp + static_cast<std::int64_t>(coeffs.size());
    return {min_exp, prec, std::move(coeffs)};
}

bool LaurentSeries::is_zero_window() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return is_zero(c); });
}

std::optional<std::int64_t> LaurentSeries::valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!is_zero(coeffs_[i])) return min_exp_ + static_cast<std::int64_t>(i);
    return std::nullopt;
}

const Rational& LaurentSeries::coeff(std::int64_t e) const {
    if (e >= prec_)
        throw PrecisionError("coefficient of q^" + std::to_string(e) +
                                 " is beyond the known window (prec " + std::to_string(prec_) + ")",
                             e + 1, prec_);
    if (e < min_exp_) return kZero;
    return coeffs_[static_cast<std::size_t>(e - min_exp_)];
}

LaurentSeries LaurentSeries::normalized() const {
    auto v = valuation();
    if (!v) return zero(prec_);
    if (*v == min_exp_) return *this;
    std::vector<Rational> trimmed(coeffs_.begin() + static_cast<std::ptrdiff_t>(*v - min_exp_),
                                  coeffs_.end());
    return {*v, prec_, std::move(trimmed)};
}

LaurentSeries LaurentSeries::truncated(std::int64_t new_prec) const {
    if (new_prec > prec_)
        throw PrecisionError("cannot extend window by truncation", new_prec, prec_);
    if (new_prec <= min_exp_) return zero(new_prec);
    std::vector<Rational> cut(coeffs_.begin(),
                              coeffs_.begin() + static_cast<std::ptrdiff_t>(new_prec - min_exp_));
    return {min_exp_, new_prec, std::move(cut)};
}

std::string LaurentSeries::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (is_zero(coeffs_[i])) continue;
        std::int64_t e = min_exp_ + static_cast<std::int64_t>(i);
        if (!first) out << " + ";
        out << qseries::to_string(coeffs_[i]);
        if (e != 0) out << "*q^" << e;
        first = false;
    }
    if (first) out << "0";
    out << " + O(q^" << prec_ << ")";
    return out.str();
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) {
    std::int64_t lo = std::min(a.min_exp_, b.min_exp_);
    std::int64_t prec = std::min(a.prec_, b.prec_);
    if (lo >= prec) return LaurentSeries::zero(prec);
    std::vector<Rational> coeffs(static_cast<std::size_t>(prec - lo));
    for (std::int64_t e = lo; e < prec; ++e) {
        Rational& c = coeffs[static_cast<std::size_t>(e - lo)];
        if (e >= a.min_exp_ && e < a.prec_) c = a.coeffs_[static_cast<std::size_t>(e - a.min_exp_)];
        if (e >= b.min_exp_ && e < b.prec_)
            acc_add(c, b.coeffs_[static_cast<std::size_t>(e - b.min_exp_)]);
    }
    return LaurentSeries::from_coeffs(lo, std::move(coeffs));
}

LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b) { return add(a, neg(b)); }

LaurentSeries neg(const LaurentSeries& a) {
    std::vector<Rational> coeffs(a.coeffs_.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = -a.coeffs_[i];
    return {a.min_exp_, a.prec_, std::move(coeffs)};
}

LaurentSeries scale(const LaurentSeries& a, const Rational& c) {
    std::vector<Rational> coeffs(a.coeffs_.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = c * a.coeffs_[i];
    return {a.min_exp_, a.prec_, std::move(coeffs)};
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
    std::int64_t prec = std::min(a.prec_ + valuation_floor(b), b.prec_ + valuation_floor(a));
    auto va = a.valuation();
    auto vb = b.valuation();
    if (!va || !vb) return LaurentSeries::zero(prec);
    std::int64_t lo = *va + *vb;
    if (lo >= prec) return LaurentSeries::zero(prec);
    std::vector<Rational> coeffs(static_cast<std::size_t>(prec - lo));
    for (std::int64_t i = *va; i < a.prec_; ++i) {
        const Rational& ai = a.coeffs_[static_cast<std::size_t>(i - a.min_exp_)];
        if (is_zero(ai)) continue;
        std::int64_t jmax = std::min(b.prec_, prec - i);
        for (std::int64_t j = *vb; j < jmax; ++j) {
            acc_addmul(coeffs[static_cast<std::size_t>(i + j - lo)], ai,
                       b.coeffs_[static_cast<std::size_t>(j - b.min_exp_)]);
        }
    }
    return LaurentSeries::from_coeffs(lo, std::move(coeffs));
}

LaurentSeries invert(const LaurentSeries& a) {
    auto va = a.valuation();
    if (!va)
        throw InvertError("cannot invert a series with no known nonzero coefficient (window [" +
                          std::to_string(a.min_exp_) + ", " + std::to_string(a.prec_) + "))");
    std::int64_t v = *va;
    std::int64_t out_lo = -v;
    std::int64_t out_prec = a.prec_ - 2 * v;
    if (out_lo >= out_prec) return LaurentSeries::zero(out_prec);
    const Rational& lead = a.coeffs_[static_cast<std::size_t>(v - a.min_exp_)];
    Rational inv_lead = 1 / lead;
    std::size_t n = static_cast<std::size_t>(out_prec - out_lo);
    std::vector<Rational> coeffs(n);
    coeffs[0] = inv_lead;
    // b_t = -(1/a_v) * sum_{i=1}^{t} a_{v+i} b_{t-i}, where b_t multiplies q^(t-v).
    for (std::size_t t = 1; t < n; ++t) {
        Rational acc(0);
        std::size_t imax = std::min(t, a.coeffs_.size() - static_cast<std::size_t>(v - a.min_exp_) - 1);
        for (std::size_t i = 1; i <= imax; ++i) {
            const Rational& ai = a.coeffs_[static_cast<std::size_t>(v - a.min_exp_) + i];
            if (is_zero(ai)) continue;
            acc_addmul(acc, ai, coeffs[t - i]);
        }
        if (!is_zero(acc)) coeffs[t] = -(inv_lead * acc);
    }
    return LaurentSeries::from_coeffs(out_lo, std::move(coeffs));
}

LaurentSeries pow(const LaurentSeries& a, std::int64_t e) {
    if (e == 0) return LaurentSeries::one(a.prec());
    LaurentSeries base = e < 0 ? invert(a) : a;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    LaurentSeries result = base;
    n -= 1;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

LaurentSeries shift(const LaurentSeries& a, std::int64_t k) {
    return {a.min_exp_ + k, a.prec_ + k, a.coeffs_};
}

LaurentSeries substitute_qpow(const LaurentSeries& a, std::int64_t m) {
    if (m < 1) throw DomainError("substitute_qpow requires m >= 1");
    if (m == 1) return a;
    std::int64_t lo = a.min_exp_ * m;
    std::int64_t prec = a.prec_ * m;
    if (a.coeffs_.empty()) return LaurentSeries::zero(prec);
    std::vector<Rational> coeffs(static_cast<std::size_t>(prec - lo));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        coeffs[i * static_cast<std::size_t>(m)] = a.coeffs_[i];
    return LaurentSeries::from_coeffs(lo, std::move(coeffs));
}

namespace {
void require_window(const LaurentSeries& s, std::int64_t lo, std::int64_t hi, const char* side) {
    if (s.prec() < hi)
        throw PrecisionError(std::string(side) + " series knows exponents only below " +
                                 std::to_string(s.prec()) + ", but the comparison needs " +
                                 std::to_string(hi),
                             hi, s.prec());
    if (s.min_exp() > lo)
        throw PrecisionError(std::string(side) + " series window starts at " +
                                 std::to_string(s.min_exp()) + ", above the requested bound " +
                                 std::to_string(lo),
                             lo, s.min_exp());
}
} // namespace

std::optional<std::int64_t> first_difference(const LaurentSeries& a, const LaurentSeries& b,
                                             std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw DomainError("first_difference: lo > hi");
    require_window(a, lo, hi, "left");
    require_window(b, lo, hi, "right");
    for (std::int64_t e = lo; e < hi; ++e)
        if (a.coeff(e) != b.coeff(e)) return e;
    return std::nullopt;
}

bool equal_on(const LaurentSeries& a, const LaurentSeries& b, std::int64_t lo, std::int64_t hi) {
    return !first_difference(a, b, lo, hi).has_value();
}

} // namespace qseries
