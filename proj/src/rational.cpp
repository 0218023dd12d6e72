#include "qseries/rational.hpp"

#include <cctype>

namespace qseries {

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool seen_digit = false, seen_slash = false;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (std::isdigit(static_cast<unsigned char>(text[j]))) {
            seen_digit = true;
        } else if (text[j] == '/' && !seen_slash && seen_digit && j + 1 < text.size()) {
            seen_slash = true;
            seen_digit = false;
        } else {
            throw DomainError("malformed rational literal: " + text);
        }
    }
    if (!seen_digit) throw DomainError("malformed rational literal: " + text);
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw DomainError("malformed rational literal: " + text);
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw DomainError("rational with zero denominator: " + text);
    r.canonicalize();
    return r;
}

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer pow3(unsigned long e) { return ipow(Integer(3), e); }

} // namespace qseries
