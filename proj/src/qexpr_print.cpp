#include <string>

#include "qseries/qexpr.hpp"

namespace qseries {

namespace {

using Kind = QExpr::Kind;

std::string print_expr(const QExpr& e);
std::string print_term(const QExpr& e);
std::string print_mul(const QExpr& e);
std::string print_pow(const QExpr& e);

bool is_atom(const QExpr& e) {
    switch (e.kind) {
        case Kind::Const:
        case Kind::QPow:
        case Kind::Eta:
        case Kind::ResidueProduct:
        case Kind::CubicCF:
        case Kind::LevelTwelveCF:
            return true;
        default:
            return false;
    }
}

std::string print_atom(const QExpr& e) {
    switch (e.kind) {
        case Kind::Const: {
            std::string s = to_string(e.value);
            // Negative or non-integer constants are outside the literal
            // grammar; parenthesize so the output stays unambiguous.
            if (e.value < 0 || !is_integer(e.value)) return "(" + s + ")";
            return s;
        }
        case Kind::QPow:
            return e.arg1 == 1 ? "q" : "q^" + std::to_string(e.arg1);
        case Kind::Eta:
            return "f" + std::to_string(e.arg1);
        case Kind::ResidueProduct:
            return "P(" + std::to_string(e.arg1) + "," + std::to_string(e.arg2) + ")";
        case Kind::CubicCF:
            return e.arg1 == 1 ? "C(q)" : "C(q^" + std::to_string(e.arg1) + ")";
        case Kind::LevelTwelveCF:
            return e.arg1 == 1 ? "h(q)" : "h(q^" + std::to_string(e.arg1) + ")";
        default:
            return "(" + print_expr(e) + ")";
    }
}

// Operand of a unary minus: '-' binds tighter than '*', so anything below
// power level needs parentheses.
std::string print_neg_operand(const QExpr& e) {
    if (e.kind == Kind::Pow) return print_pow(e);
    if (is_atom(e)) return print_atom(e);
    return "(" + print_expr(e) + ")";
}

std::string print_pow(const QExpr& e) {
    const QExpr& base = *e.children[0];
    bool bare = (base.kind == Kind::Eta || base.kind == Kind::ResidueProduct ||
                 base.kind == Kind::CubicCF || base.kind == Kind::LevelTwelveCF ||
                 (base.kind == Kind::Const && base.value >= 0 && is_integer(base.value)));
    std::string b = bare ? print_atom(base) : "(" + print_expr(base) + ")";
    return b + "^" + std::to_string(e.arg1);
}

std::string print_factor(const QExpr& e, bool first_in_mul) {
    switch (e.kind) {
        case Kind::Pow:
            return print_pow(e);
        case Kind::Neg: {
            std::string inner = "-" + print_neg_operand(*e.children[0]);
            return first_in_mul ? inner : "(" + inner + ")";
        }
        case Kind::Add:
            return "(" + print_expr(e) + ")";
        case Kind::Mul:
            return "(" + print_mul(e) + ")";
        default:
            return print_atom(e);
    }
}

bool denominator_eligible(const QExpr& e) {
    return e.kind == Kind::Pow && e.arg1 < 0 && e.children[0]->kind != Kind::Mul;
}

std::string print_den_item(const QExpr& e) {
    const QExpr& base = *e.children[0];
    bool bare = (base.kind == Kind::Eta || base.kind == Kind::ResidueProduct ||
                 base.kind == Kind::CubicCF || base.kind == Kind::LevelTwelveCF ||
                 (base.kind == Kind::Const && base.value >= 0 && is_integer(base.value)));
    std::string b = bare ? print_atom(base) : "(" + print_expr(base) + ")";
    std::int64_t k = -e.arg1;
    return k == 1 ? b : b + "^" + std::to_string(k);
}

// Renders a product as numerator/denominator where the denominator is the
// maximal suffix of negative-exponent powers; that keeps child order intact
// under reparsing (division distributes over a parenthesized product).
std::string print_mul(const QExpr& e) {
    const auto& ch = e.children;
    std::size_t den_start = ch.size();
    while (den_start > 1 && denominator_eligible(*ch[den_start - 1])) --den_start;
    std::string out;
    for (std::size_t i = 0; i < den_start; ++i) {
        if (i > 0) out += "*";
        out += print_factor(*ch[i], i == 0);
    }
    if (den_start == ch.size()) return out;
    out += "/";
    if (ch.size() - den_start == 1) return out + print_den_item(*ch[den_start]);
    out += "(";
    for (std::size_t i = den_start; i < ch.size(); ++i) {
        if (i > den_start) out += "*";
        out += print_den_item(*ch[i]);
    }
    return out + ")";
}

std::string print_term(const QExpr& e) {
    switch (e.kind) {
        case Kind::Mul:
            return print_mul(e);
        case Kind::Add:
            return "(" + print_expr(e) + ")";
        case Kind::Neg:
            return "-" + print_neg_operand(*e.children[0]);
        default:
            return print_factor(e, true);
    }
}

std::string print_expr(const QExpr& e) {
    if (e.kind != Kind::Add) return print_term(e);
    std::string out = print_term(*e.children[0]);
    for (std::size_t i = 1; i < e.children.size(); ++i) {
        const QExpr& c = *e.children[i];
        if (c.kind == Kind::Neg) {
            out += " - " + print_term(*c.children[0]);
        } else {
            out += " + " + print_term(c);
        }
    }
    return out;
}

} // namespace

std::string print_qexpr(const QExpr& e) { return print_expr(e); }

} // namespace qseries
