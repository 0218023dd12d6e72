#include <cctype>
#include <cstdlib>
#include <string>

#include "qseries/errors.hpp"
#include "qseries/qexpr.hpp"

namespace qseries {

namespace {

enum class Tok { Number, FSym, Q, C, H, P, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text; // digits for Number / FSym index
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        int line = line_, col = col_;
        if (pos_ >= src_.size()) {
            current_ = {Tok::End, "", line, col};
            return;
        }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            ++pos_;
            ++col_;
            current_ = {k, std::string(1, c), line, col};
        };
        switch (c) {
            case '+': return single(Tok::Plus);
            case '-': return single(Tok::Minus);
            case '*': return single(Tok::Star);
            case '/': return single(Tok::Slash);
            case '^': return single(Tok::Caret);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case ',': return single(Tok::Comma);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = take_digits();
            current_ = {Tok::Number, digits, line, col};
            return;
        }
        if (c == 'f') {
            ++pos_;
            ++col_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw ParseError("'f' must be followed by an index (e.g. f2)", line, col);
            current_ = {Tok::FSym, take_digits(), line, col};
            return;
        }
        if (c == 'q' || c == 'C' || c == 'h' || c == 'P') {
            ++pos_;
            ++col_;
            if (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
                throw ParseError(std::string("unknown token starting with '") + c + "'", line, col);
            Tok k = c == 'q' ? Tok::Q : c == 'C' ? Tok::C : c == 'h' ? Tok::H : Tok::P;
            current_ = {k, std::string(1, c), line, col};
            return;
        }
        throw ParseError(std::string("unknown token '") + c + "'", line, col);
    }

    std::string take_digits() {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            digits += src_[pos_];
            ++pos_;
            ++col_;
        }
        return digits;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_{Tok::End, "", 1, 1};
};

std::int64_t to_int64(const Token& t) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(t.text.c_str(), &end, 10);
    if (errno != 0 || end != t.text.c_str() + t.text.size())
        throw ParseError("integer literal out of range: " + t.text, t.line, t.column);
    return v;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    QExprPtr parse() {
        QExprPtr e = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError("unexpected trailing input", t.line, t.column);
        return e;
    }

private:
    Lexer lex_;

    bool accept(Tok k) {
        if (lex_.peek().kind != k) return false;
        lex_.take();
        return true;
    }

    Token expect(Tok k, const char* what) {
        const Token& t = lex_.peek();
        if (t.kind != k) throw ParseError(std::string("expected ") + what, t.line, t.column);
        return lex_.take();
    }

    QExprPtr parse_expr() {
        std::vector<QExprPtr> terms;
        terms.push_back(parse_term());
        while (true) {
            if (accept(Tok::Plus)) {
                terms.push_back(parse_term());
            } else if (accept(Tok::Minus)) {
                terms.push_back(QExpr::neg(parse_term()));
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms[0] : QExpr::add(std::move(terms));
    }

    QExprPtr parse_term() {
        std::vector<QExprPtr> factors;
        factors.push_back(parse_signed_factor());
        while (true) {
            if (accept(Tok::Star)) {
                factors.push_back(parse_signed_factor());
            } else if (accept(Tok::Slash)) {
                QExprPtr rhs = parse_signed_factor();
                // Division distributes over a parenthesized product, so
                // a/(x*y^2) and a*x^-1*y^-2 parse to the same tree.
                if (rhs->kind == QExpr::Kind::Mul) {
                    for (const QExprPtr& c : rhs->children) factors.push_back(inverse_of(c));
                } else {
                    factors.push_back(inverse_of(rhs));
                }
            } else {
                break;
            }
        }
        return factors.size() == 1 ? factors[0] : QExpr::mul(std::move(factors));
    }

    static QExprPtr inverse_of(const QExprPtr& e) {
        if (e->kind == QExpr::Kind::Pow) return QExpr::pow(e->children[0], -e->arg1);
        if (e->kind == QExpr::Kind::QPow) return QExpr::qpow(-e->arg1);
        return QExpr::pow(e, -1);
    }

    QExprPtr parse_signed_factor() {
        if (accept(Tok::Minus)) return QExpr::neg(parse_signed_factor());
        return parse_power();
    }

    QExprPtr parse_power() {
        auto [atom, plain_q] = parse_atom();
        if (lex_.peek().kind != Tok::Caret) return atom;
        lex_.take();
        std::int64_t e = parse_exponent();
        const Token& t = lex_.peek();
        if (t.kind == Tok::Caret)
            throw ParseError("'^' is non-associative; parenthesize exponent towers", t.line,
                             t.column);
        if (plain_q) return QExpr::qpow(e);
        return QExpr::pow(atom, e);
    }

    std::int64_t parse_exponent() {
        bool negative = accept(Tok::Minus);
        const Token& t = lex_.peek();
        if (t.kind != Tok::Number) throw ParseError("expected integer exponent", t.line, t.column);
        std::int64_t v = to_int64(lex_.take());
        return negative ? -v : v;
    }

    // Returns the node and whether it was the bare token 'q' (eligible for
    // folding q^k into QPow(k)).
    std::pair<QExprPtr, bool> parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Number:
                lex_.take();
                return {QExpr::constant(Rational(Integer(t.text))), false};
            case Tok::FSym: {
                lex_.take();
                std::int64_t m = to_int64(t);
                if (m < 1) throw ParseError("eta index must be >= 1", t.line, t.column);
                return {QExpr::eta(m), false};
            }
            case Tok::Q:
                lex_.take();
                return {QExpr::qpow(1), true};
            case Tok::C:
            case Tok::H: {
                lex_.take();
                expect(Tok::LParen, "'('");
                Token q = expect(Tok::Q, "'q'");
                std::int64_t k = 1;
                if (accept(Tok::Caret)) {
                    Token n = expect(Tok::Number, "integer power of q");
                    k = to_int64(n);
                }
                expect(Tok::RParen, "')'");
                if (k < 1)
                    throw ParseError("continued-fraction argument must be q^k with k >= 1", q.line,
                                     q.column);
                return {t.kind == Tok::C ? QExpr::cubic_cf(k) : QExpr::level12_cf(k), false};
            }
            case Tok::P: {
                lex_.take();
                expect(Tok::LParen, "'('");
                Token m = expect(Tok::Number, "modulus");
                expect(Tok::Comma, "','");
                Token r = expect(Tok::Number, "residue");
                expect(Tok::RParen, "')'");
                try {
                    return {QExpr::residue_product(to_int64(m), to_int64(r)), false};
                } catch (const DomainError& err) {
                    throw DomainError(std::string(err.what()) + " at line " +
                                      std::to_string(m.line) + ", column " +
                                      std::to_string(m.column));
                }
            }
            case Tok::LParen: {
                lex_.take();
                QExprPtr inner = parse_expr();
                expect(Tok::RParen, "')'");
                return {inner, false};
            }
            default:
                throw ParseError("expected an operand", t.line, t.column);
        }
    }
};

} // namespace

QExprPtr parse_qexpr(std::string_view text) { return Parser(text).parse(); }

} // namespace qseries
