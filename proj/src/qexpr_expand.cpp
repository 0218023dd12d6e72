#include <algorithm>
#include <string>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/eta.hpp"
#include "qseries/qexpr.hpp"

namespace qseries {

namespace {

using Kind = QExpr::Kind;

std::string snippet(const QExpr& e) {
    std::string s = print_qexpr(e);
    if (s.size() > 60) s = s.substr(0, 57) + "...";
    return s;
}

Rational const_power(const Rational& c, std::int64_t e) {
    if (e == 0) return Rational(1);
    if (is_zero(c)) {
        if (e < 0) throw DomainError("division by the zero constant");
        return Rational(0);
    }
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    // c in lowest terms means c^e is too, so no canonicalization needed.
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(c.get_mpq_t()), ae);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(c.get_mpq_t()), ae);
    if (e < 0) mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    return r;
}

class Evaluator {
public:
    explicit Evaluator(std::int64_t budget) : budget_(budget) {}

    LaurentSeries eval(const QExpr& e, std::int64_t w) {
        switch (e.kind) {
            case Kind::Const:
                return LaurentSeries::monomial(e.value, 0, w);
            case Kind::QPow:
                check_window(w + std::max<std::int64_t>(e.arg1, 0));
                return LaurentSeries::monomial(Rational(1), e.arg1,
                                               w + std::max<std::int64_t>(e.arg1, 0));
            case Kind::Eta:
                return eta_series(e.arg1, w);
            case Kind::ResidueProduct:
                return mul_residue_product(LaurentSeries::one(w), e.arg1, e.arg2, 1);
            case Kind::CubicCF:
                return cubic_cf_series(e.arg1, 1, w);
            case Kind::LevelTwelveCF:
                return level12_cf_series(e.arg1, 1, w);
            case Kind::Neg:
                return neg(eval(*e.children[0], w));
            case Kind::Add: {
                LaurentSeries acc = eval(*e.children[0], w);
                for (std::size_t i = 1; i < e.children.size(); ++i)
                    acc = add(acc, eval(*e.children[i], w));
                return acc;
            }
            case Kind::Mul:
                return eval_mul(e, w);
            case Kind::Pow:
                return eval_pow(e, w);
        }
        throw DomainError("unreachable expression kind");
    }

private:
    std::int64_t budget_;

    void check_window(std::int64_t size) const {
        if (size > budget_ + 64)
            throw BudgetError("expansion window of " + std::to_string(size) +
                                  " coefficients exceeds the budget",
                              size, budget_);
    }

    // f_k f_{6k}^3 / (f_{2k} f_{3k}^3), raised to the e-th power, on [0, w).
    LaurentSeries cubic_cf_series(std::int64_t k, std::int64_t e, std::int64_t w) {
        LaurentSeries s = LaurentSeries::one(w);
        s = mul_eta_power(s, k, e);
        s = mul_eta_power(s, 6 * k, 3 * e);
        s = mul_eta_power(s, 2 * k, -e);
        s = mul_eta_power(s, 3 * k, -3 * e);
        return s;
    }

    // h(q^k)^e = q^{ke} * [P(12k,11k) P(12k,k) / (P(12k,7k) P(12k,5k))]^e.
    LaurentSeries level12_cf_series(std::int64_t k, std::int64_t e, std::int64_t w) {
        LaurentSeries s = LaurentSeries::one(w);
        s = mul_residue_product(s, 12 * k, 11 * k, e);
        s = mul_residue_product(s, 12 * k, k, e);
        s = mul_residue_product(s, 12 * k, 7 * k, -e);
        s = mul_residue_product(s, 12 * k, 5 * k, -e);
        return shift(s, k * e);
    }

    LaurentSeries eval_pow(const QExpr& e, std::int64_t w) {
        const QExpr& base = *e.children[0];
        std::int64_t ex = e.arg1;
        if (ex == 0) return LaurentSeries::one(w);
        switch (base.kind) {
            case Kind::Eta:
                return mul_eta_power(LaurentSeries::one(w), base.arg1, ex);
            case Kind::ResidueProduct:
                return mul_residue_product(LaurentSeries::one(w), base.arg1, base.arg2, ex);
            case Kind::CubicCF:
                return cubic_cf_series(base.arg1, ex, w);
            case Kind::LevelTwelveCF:
                return level12_cf_series(base.arg1, ex, w);
            case Kind::QPow: {
                std::int64_t k = base.arg1 * ex;
                check_window(w + std::max<std::int64_t>(k, 0));
                return LaurentSeries::monomial(Rational(1), k, w + std::max<std::int64_t>(k, 0));
            }
            case Kind::Const:
                return LaurentSeries::monomial(const_power(base.value, ex), 0, w);
            default:
                break;
        }
        try {
            return pow(eval(base, w), ex);
        } catch (const InvertError& err) {
            throw InvertError(std::string(err.what()) + "\n  while expanding " + snippet(e));
        }
    }

    LaurentSeries eval_mul(const QExpr& e, std::int64_t w) {
        // First pass: fold constants and explicit q-powers out of the
        // product, so the working window can absorb a net downward shift.
        Rational const_factor(1);
        std::int64_t net_shift = 0;
        std::vector<const QExpr*> factors;
        std::vector<const QExpr*> work;
        for (const auto& c : e.children) work.push_back(c.get());
        for (std::size_t i = 0; i < work.size(); ++i) {
            const QExpr& c = *work[i];
            if (c.kind == Kind::Const) {
                const_factor *= c.value;
            } else if (c.kind == Kind::QPow) {
                net_shift += c.arg1;
            } else if (c.kind == Kind::Neg) {
                const_factor = -const_factor;
                work.push_back(c.children[0].get());
            } else if (c.kind == Kind::Pow && c.children[0]->kind == Kind::QPow) {
                net_shift += c.children[0]->arg1 * c.arg1;
            } else if (c.kind == Kind::Pow && c.children[0]->kind == Kind::Const) {
                const_factor *= const_power(c.children[0]->value, c.arg1);
            } else {
                factors.push_back(&c);
            }
        }
        std::int64_t w_inner = w + std::max<std::int64_t>(-net_shift, 0);
        check_window(w_inner);

        // Second pass: sparse unit factors act on the accumulator in place;
        // anything else expands on its own and multiplies in.
        LaurentSeries acc;
        bool started = false;
        auto ensure = [&]() {
            if (!started) {
                acc = LaurentSeries::one(w_inner);
                started = true;
            }
        };
        for (const QExpr* cp : factors) {
            const QExpr& c = *cp;
            if (c.kind == Kind::Eta) {
                ensure();
                acc = mul_eta_power(acc, c.arg1, 1);
            } else if (c.kind == Kind::ResidueProduct) {
                ensure();
                acc = mul_residue_product(acc, c.arg1, c.arg2, 1);
            } else if (c.kind == Kind::Pow && c.children[0]->kind == Kind::Eta) {
                ensure();
                acc = mul_eta_power(acc, c.children[0]->arg1, c.arg1);
            } else if (c.kind == Kind::Pow && c.children[0]->kind == Kind::ResidueProduct) {
                ensure();
                acc = mul_residue_product(acc, c.children[0]->arg1, c.children[0]->arg2, c.arg1);
            } else if (c.kind == Kind::CubicCF || c.kind == Kind::LevelTwelveCF ||
                       (c.kind == Kind::Pow && (c.children[0]->kind == Kind::CubicCF ||
                                                c.children[0]->kind == Kind::LevelTwelveCF))) {
                const QExpr& cf = c.kind == Kind::Pow ? *c.children[0] : c;
                std::int64_t ex = c.kind == Kind::Pow ? c.arg1 : 1;
                LaurentSeries t = cf.kind == Kind::CubicCF
                                      ? cubic_cf_series(cf.arg1, ex, w_inner)
                                      : level12_cf_series(cf.arg1, ex, w_inner);
                acc = started ? mul(acc, t) : t;
                started = true;
            } else {
                LaurentSeries t = eval(c, w_inner);
                acc = started ? mul(acc, t) : t;
                started = true;
            }
            check_window(acc.window_size());
        }
        ensure();
        if (const_factor != 1) acc = scale(acc, const_factor);
        if (net_shift != 0) acc = shift(acc, net_shift);
        return acc;
    }
};

} // namespace

LaurentSeries expand(const QExpr& e, std::int64_t order, const ExpandOptions& opts) {
    if (order < 1) throw DomainError("expansion order must be >= 1");
    if (order > opts.budget)
        throw BudgetError("requested order " + std::to_string(order) +
                              " exceeds the coefficient budget " + std::to_string(opts.budget),
                          order, opts.budget);
    std::int64_t slack = 8;
    std::string pending_invert;
    for (;;) {
        std::int64_t w = order + slack;
        if (w > opts.budget) {
            if (!pending_invert.empty())
                throw DomainError(
                    "inversion kept failing while widening the working window up to the budget; "
                    "the subexpression may be identically zero\n  " +
                    pending_invert);
            throw BudgetError("expansion needs a working window of " + std::to_string(w) +
                                  " coefficients, above the budget " +
                                  std::to_string(opts.budget),
                              w, opts.budget);
        }
        try {
            LaurentSeries s = Evaluator(opts.budget).eval(e, w);
            if (s.prec() >= order) return s;
            // The tree lost (order - s.prec()) exponents to downward shifts
            // and inversions; re-expand with exactly that much more slack.
            slack += order - s.prec();
        } catch (const InvertError& err) {
            pending_invert = err.what();
            slack = slack * 2;
        }
    }
}

} // namespace qseries
