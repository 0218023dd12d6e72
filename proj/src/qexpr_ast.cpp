#include "qseries/qexpr.hpp"

#include "qseries/errors.hpp"

namespace qseries {

namespace {
QExprPtr node(QExpr e) { return std::make_shared<const QExpr>(std::move(e)); }
} // namespace

QExprPtr QExpr::constant(Rational v) {
    QExpr e{Kind::Const, std::move(v), 0, 0, {}};
    return node(std::move(e));
}

QExprPtr QExpr::qpow(std::int64_t k) { return node({Kind::QPow, Rational(0), k, 0, {}}); }

QExprPtr QExpr::eta(std::int64_t m) {
    if (m < 1) throw DomainError("eta index must be >= 1 (got f" + std::to_string(m) + ")");
    return node({Kind::Eta, Rational(0), m, 0, {}});
}

QExprPtr QExpr::residue_product(std::int64_t m, std::int64_t r) {
    if (m < 1 || r < 1 || r > m)
        throw DomainError("P(m,r) requires 1 <= r <= m (got P(" + std::to_string(m) + "," +
                          std::to_string(r) + "))");
    return node({Kind::ResidueProduct, Rational(0), m, r, {}});
}

QExprPtr QExpr::cubic_cf(std::int64_t k) {
    if (k < 1) throw DomainError("C(q^k) requires k >= 1");
    return node({Kind::CubicCF, Rational(0), k, 0, {}});
}

QExprPtr QExpr::level12_cf(std::int64_t k) {
    if (k < 1) throw DomainError("h(q^k) requires k >= 1");
    return node({Kind::LevelTwelveCF, Rational(0), k, 0, {}});
}

QExprPtr QExpr::add(std::vector<QExprPtr> children) {
    if (children.size() == 1) return children[0];
    if (children.size() < 2) throw DomainError("Add needs at least two children");
    return node({Kind::Add, Rational(0), 0, 0, std::move(children)});
}

QExprPtr QExpr::mul(std::vector<QExprPtr> children) {
    if (children.size() == 1) return children[0];
    if (children.size() < 2) throw DomainError("Mul needs at least two children");
    return node({Kind::Mul, Rational(0), 0, 0, std::move(children)});
}

QExprPtr QExpr::pow(QExprPtr base, std::int64_t e) {
    return node({Kind::Pow, Rational(0), e, 0, {std::move(base)}});
}

QExprPtr QExpr::neg(QExprPtr child) {
    return node({Kind::Neg, Rational(0), 0, 0, {std::move(child)}});
}

bool structurally_equal(const QExpr& a, const QExpr& b) {
    if (a.kind != b.kind || a.arg1 != b.arg1 || a.arg2 != b.arg2) return false;
    if (a.kind == QExpr::Kind::Const && a.value != b.value) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(*a.children[i], *b.children[i])) return false;
    return true;
}

} // namespace qseries
