#include "qseries/eta.hpp"

#include <algorithm>

#include "qseries/errors.hpp"

namespace qseries {

std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t m, std::int64_t max_exp) {
    if (m < 1) throw DomainError("eta index must be >= 1");
    std::vector<std::pair<std::int64_t, int>> terms;
    if (max_exp <= 0) return terms;
    terms.emplace_back(0, 1);
    for (std::int64_t k = 1;; ++k) {
        int sign = (k % 2 == 0) ? 1 : -1;
        std::int64_t g1 = m * (k * (3 * k - 1)) / 2; // k(3k-1)/2 is always even-product/2 exact
        std::int64_t g2 = m * (k * (3 * k + 1)) / 2; // exponent for -k
        if (g1 >= max_exp) break;
        terms.emplace_back(g1, sign);
        if (g2 < max_exp) terms.emplace_back(g2, sign);
    }
    std::sort(terms.begin(), terms.end());
    return terms;
}

LaurentSeries eta_series(std::int64_t m, std::int64_t prec) {
    std::vector<Rational> coeffs(prec > 0 ? static_cast<std::size_t>(prec) : 0);
    for (const auto& [e, sign] : pentagonal_terms(m, prec))
        coeffs[static_cast<std::size_t>(e)] = sign;
    return LaurentSeries::from_coeffs(0, std::move(coeffs));
}

namespace {

// One in-place pass of v *= f, where f = 1 + sum of sign*q^g over terms
// (g > 0). Descending order keeps the reads below the write untouched.
void mul_pass(std::vector<Rational>& v, const std::vector<std::pair<std::int64_t, int>>& terms) {
    std::int64_t n = static_cast<std::int64_t>(v.size());
    for (std::int64_t i = n - 1; i >= 0; --i) {
        for (std::size_t t = 1; t < terms.size(); ++t) {
            std::int64_t g = terms[t].first;
            if (g > i) break;
            if (terms[t].second > 0)
                acc_add(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i - g)]);
            else
                acc_sub(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i - g)]);
        }
    }
}

// One in-place pass of v /= f: the forward recurrence
// out[i] = v[i] - sum sign*out[i-g], valid because f has constant term 1.
void div_pass(std::vector<Rational>& v, const std::vector<std::pair<std::int64_t, int>>& terms) {
    std::int64_t n = static_cast<std::int64_t>(v.size());
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::size_t t = 1; t < terms.size(); ++t) {
            std::int64_t g = terms[t].first;
            if (g > i) break;
            if (terms[t].second > 0)
                acc_sub(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i - g)]);
            else
                acc_add(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i - g)]);
        }
    }
}

LaurentSeries apply_unit_factor(const LaurentSeries& s,
                                const std::vector<std::pair<std::int64_t, int>>& terms,
                                std::int64_t e) {
    if (e == 0 || s.window_size() == 0) return s;
    std::vector<Rational> v = s.coeffs();
    for (std::int64_t pass = 0; pass < (e > 0 ? e : -e); ++pass) {
        if (e > 0)
            mul_pass(v, terms);
        else
            div_pass(v, terms);
    }
    return LaurentSeries::from_coeffs(s.min_exp(), std::move(v));
}

} // namespace

LaurentSeries mul_eta_power(const LaurentSeries& s, std::int64_t m, std::int64_t e) {
    return apply_unit_factor(s, pentagonal_terms(m, s.window_size()), e);
}

LaurentSeries mul_binomial_power(const LaurentSeries& s, std::int64_t j, std::int64_t e) {
    if (j < 1) throw DomainError("binomial factor exponent must be >= 1");
    std::vector<std::pair<std::int64_t, int>> terms{{0, 1}, {j, -1}};
    if (j >= s.window_size()) terms.pop_back(); // identity on this window
    return apply_unit_factor(s, terms, e);
}

LaurentSeries mul_residue_product(const LaurentSeries& s, std::int64_t m, std::int64_t r,
                                  std::int64_t e) {
    if (m < 1 || r < 1 || r > m) throw DomainError("residue product requires 1 <= r <= m");
    LaurentSeries acc = s;
    for (std::int64_t j = r; j < s.window_size(); j += m) acc = mul_binomial_power(acc, j, e);
    return acc;
}

} // namespace qseries
