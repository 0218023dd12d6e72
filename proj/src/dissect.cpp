#include "qseries/dissect.hpp"

#include "qseries/errors.hpp"

namespace qseries {

ProgressionSelector::ProgressionSelector(std::int64_t t, std::int64_t r) : modulus(t), residue(r) {
    if (t < 1) throw DomainError("progression modulus must be >= 1");
    if (r < 0 || r >= t)
        throw DomainError("progression residue must satisfy 0 <= r < t (got r=" +
                          std::to_string(r) + ", t=" + std::to_string(t) + ")");
}

LaurentSeries extract(const LaurentSeries& s, const ProgressionSelector& sel) {
    std::int64_t t = sel.modulus;
    std::int64_t r = sel.residue;
    std::int64_t lo = ceil_div(s.min_exp() - r, t);
    std::int64_t prec = ceil_div(s.prec() - r, t);
    if (lo >= prec) return LaurentSeries::zero(prec);
    std::vector<Rational> coeffs(static_cast<std::size_t>(prec - lo));
    for (std::int64_t n = lo; n < prec; ++n)
        coeffs[static_cast<std::size_t>(n - lo)] = s.coeff(t * n + r);
    return LaurentSeries::from_coeffs(lo, std::move(coeffs));
}

LaurentSeries reassemble(const std::vector<LaurentSeries>& parts, std::int64_t t) {
    if (static_cast<std::int64_t>(parts.size()) != t)
        throw DomainError("reassemble needs exactly t parts (got " +
                          std::to_string(parts.size()) + ", t=" + std::to_string(t) + ")");
    LaurentSeries acc;
    for (std::int64_t r = 0; r < t; ++r) {
        LaurentSeries piece = shift(substitute_qpow(parts[static_cast<std::size_t>(r)], t), r);
        acc = (r == 0) ? piece : add(acc, piece);
    }
    return acc;
}

} // namespace qseries
