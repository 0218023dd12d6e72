#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/laurent_series.hpp"
#include "qseries/rational.hpp"

namespace qseries {

/// AST node for the q-series formula language.
///
/// Atoms: rational constants, q^k, the eta symbols f_m = prod(1 - q^{mn}),
/// residue-class products P(m, r) = prod_{n ≡ r (m)} (1 - q^n), Ramanujan's
/// cubic continued fraction C(q^k) (the eta quotient f_k f_{6k}^3 / (f_{2k}
/// f_{3k}^3)) and the level-12 continued fraction h(q^k) (valuation k).
/// Division is desugared to Pow(·, -1) composed with Mul; there is no
/// division node.
struct QExpr;
using QExprPtr = std::shared_ptr<const QExpr>;

struct QExpr {
    enum class Kind {
        Const,          ///< value
        QPow,           ///< q^arg1
        Eta,            ///< f_{arg1}, arg1 >= 1
        ResidueProduct, ///< P(arg1, arg2), 1 <= arg2 <= arg1
        CubicCF,        ///< C(q^arg1), arg1 >= 1
        LevelTwelveCF,  ///< h(q^arg1), arg1 >= 1
        Add,            ///< sum of children (>= 2)
        Mul,            ///< product of children (>= 2)
        Pow,            ///< children[0] ^ arg1 (integer, possibly negative)
        Neg,            ///< -children[0]
    };

    Kind kind;
    Rational value;             // Const only
    std::int64_t arg1 = 0;      // see Kind comments
    std::int64_t arg2 = 0;      // ResidueProduct residue
    std::vector<QExprPtr> children;

    static QExprPtr constant(Rational v);
    static QExprPtr qpow(std::int64_t k);
    static QExprPtr eta(std::int64_t m);
    static QExprPtr residue_product(std::int64_t m, std::int64_t r);
    static QExprPtr cubic_cf(std::int64_t k);
    static QExprPtr level12_cf(std::int64_t k);
    static QExprPtr add(std::vector<QExprPtr> children);
    static QExprPtr mul(std::vector<QExprPtr> children);
    static QExprPtr pow(QExprPtr base, std::int64_t e);
    static QExprPtr neg(QExprPtr child);
};

bool structurally_equal(const QExpr& a, const QExpr& b);

/// Parses the textual grammar (see docs/formats.md). Precedence, tightest
/// first: ^  then unary minus  then * /  then + -. '^' is non-associative;
/// towers need parentheses. Whitespace is insignificant.
QExprPtr parse_qexpr(std::string_view text);

/// Canonical text form; parse_qexpr(print_qexpr(e)) is structurally equal
/// to e for every tree the grammar can produce.
std::string print_qexpr(const QExpr& e);

struct ExpandOptions {
    std::int64_t budget = 50000; ///< max coefficients in any one series
};

/// Exact truncated expansion with prec >= order. Eta symbols expand by the
/// pentagonal number theorem (inverses by the division recurrence), C and h
/// from their product closed forms. Internally re-expands with extra
/// working precision when valuation-lowering subtrees (q^{-k}, 1/h, ...)
/// eat into the requested window.
LaurentSeries expand(const QExpr& e, std::int64_t order, const ExpandOptions& opts = {});

inline LaurentSeries expand(const QExprPtr& e, std::int64_t order, const ExpandOptions& opts = {}) {
    return expand(*e, order, opts);
}

} // namespace qseries
