#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qseries/laurent_series.hpp"

namespace qseries {

/// Nonzero terms of f_m = prod_{n>=1}(1 - q^{mn}) with exponent < max_exp,
/// via Euler's pentagonal number theorem: exponent m*k(3k-1)/2, sign (-1)^k,
/// k = 0, 1, -1, 2, -2, ... Sorted by exponent, first term is (0, +1).
std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t m, std::int64_t max_exp);

/// Dense expansion of f_m on [0, prec).
LaurentSeries eta_series(std::int64_t m, std::int64_t prec);

/// s * f_m^e on s's window. The factor has valuation 0 and is known to all
/// orders, so the window is unchanged; each of the |e| passes costs
/// O(window * sqrt(window/m)) coefficient additions.
LaurentSeries mul_eta_power(const LaurentSeries& s, std::int64_t m, std::int64_t e);

/// s * (1 - q^j)^e for j >= 1, window unchanged.
LaurentSeries mul_binomial_power(const LaurentSeries& s, std::int64_t j, std::int64_t e);

/// s * [prod_{n>=1, n ≡ r (mod m)} (1 - q^n)]^e, window unchanged.
/// Only the finitely many factors with exponent inside the window act.
LaurentSeries mul_residue_product(const LaurentSeries& s, std::int64_t m, std::int64_t r,
                                  std::int64_t e);

} // namespace qseries
