#pragma once

#include <cstdint>
#include <vector>

#include "qseries/laurent_series.hpp"

namespace qseries {

/// Mathematical ceiling of a/b for b > 0 (truncating division rounds the
/// wrong way for negative numerators: ceil(-5/3) = -1).
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/// Arithmetic-progression selector: exponents ≡ residue (mod modulus).
struct ProgressionSelector {
    std::int64_t modulus;
    std::int64_t residue;

    ProgressionSelector(std::int64_t t, std::int64_t r);
};

/// Coefficient of q^n in the result is the coefficient of q^(t*n + r) in s,
/// re-indexed: result min_exp = ceil((s.min_exp - r)/t), result prec =
/// ceil((s.prec - r)/t).
LaurentSeries extract(const LaurentSeries& s, const ProgressionSelector& sel);

/// sum_r q^r * parts[r](q^t); inverse of splitting s into its t residue
/// classes with extract.
LaurentSeries reassemble(const std::vector<LaurentSeries>& parts, std::int64_t t);

} // namespace qseries
