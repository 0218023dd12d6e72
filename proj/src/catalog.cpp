#include "qseries/catalog.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qseries/dissect.hpp"
#include "qseries/errors.hpp"

namespace qseries {

bool operator==(const Transform& x, const Transform& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
}

LaurentSeries apply_pipeline(const LaurentSeries& s, const std::vector<Transform>& pipeline) {
    LaurentSeries out = s;
    for (const Transform& t : pipeline) {
        switch (t.kind) {
            case Transform::Kind::Shift:
                out = shift(out, t.a);
                break;
            case Transform::Kind::Extract:
                out = extract(out, ProgressionSelector(t.a, t.b));
                break;
            case Transform::Kind::SubstituteQPow:
                out = substitute_qpow(out, t.a);
                break;
        }
    }
    return out;
}

std::int64_t pipeline_source_precision(const std::vector<Transform>& pipeline, std::int64_t hi) {
    std::int64_t h = hi;
    for (auto it = pipeline.rbegin(); it != pipeline.rend(); ++it) {
        switch (it->kind) {
            case Transform::Kind::Shift:
                h -= it->a;
                break;
            case Transform::Kind::Extract:
                h = it->a * (h - 1) + it->b + 1;
                break;
            case Transform::Kind::SubstituteQPow:
                h = ceil_div(h, it->a);
                break;
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Closed-form integer expressions in k.

namespace {

class KEval {
public:
    KEval(const std::string& text, std::int64_t k) : text_(text), k_(k) {}

    Rational run() {
        Rational v = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw CatalogError("trailing input in expression '" + text_ + "'");
        return v;
    }

private:
    const std::string& text_;
    std::int64_t k_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Rational expr() {
        Rational v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    Rational term() {
        Rational v = factor();
        for (;;) {
            if (accept('*')) {
                v *= factor();
            } else if (accept('/')) {
                Rational d = factor();
                if (is_zero(d)) throw CatalogError("division by zero in '" + text_ + "'");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Rational factor() {
        if (accept('-')) return -factor();
        Rational base = atom();
        if (!accept('^')) return base;
        Rational e = atom();
        if (!is_integer(e) || e < 0)
            throw CatalogError("exponent must be a nonnegative integer in '" + text_ + "'");
        if (!e.get_num().fits_ulong_p())
            throw CatalogError("exponent too large in '" + text_ + "'");
        unsigned long ae = e.get_num().get_ui();
        Rational r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), ae);
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), ae);
        return r;
    }

    Rational atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw CatalogError("unexpected end of expression '" + text_ + "'");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Rational v = expr();
            if (!accept(')')) throw CatalogError("missing ')' in '" + text_ + "'");
            return v;
        }
        if (c == 'k') {
            ++pos_;
            return Rational(Integer(k_));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                ++pos_;
            }
            return Rational(Integer(digits));
        }
        throw CatalogError(std::string("unexpected character '") + c + "' in '" + text_ + "'");
    }
};

} // namespace

KExpression::KExpression(std::string text) : text_(std::move(text)) {
    KEval(text_, 0).run(); // syntax check
}

Integer KExpression::eval(std::int64_t k) const {
    Rational v = KEval(text_, k).run();
    if (!is_integer(v))
        throw CatalogError("expression '" + text_ + "' is not an integer at k=" +
                           std::to_string(k) + " (value " + to_string(v) + ")");
    return v.get_num();
}

// ---------------------------------------------------------------------------
// File format.

const IdentityRecord* Catalog::find_identity(const std::string& id) const {
    for (const auto& r : identities)
        if (r.id == id) return &r;
    return nullptr;
}

const CongruenceFamily* Catalog::find_family(const std::string& id) const {
    for (const auto& f : families)
        if (f.id == id) return &f;
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size() || s.empty())
        throw CatalogError(where + ": expected an integer, got '" + s + "'");
    return v;
}

std::vector<Transform> parse_pipeline(const std::string& text, const std::string& where) {
    std::vector<Transform> out;
    std::istringstream in(text);
    std::string item;
    while (in >> item) {
        auto open = item.find('(');
        auto close = item.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open ||
            close + 1 != item.size())
            throw CatalogError(where + ": malformed transform '" + item + "'");
        std::string name = item.substr(0, open);
        std::string args_text = item.substr(open + 1, close - open - 1);
        std::vector<std::int64_t> args;
        std::string piece;
        std::istringstream argin(args_text);
        while (std::getline(argin, piece, ','))
            args.push_back(parse_int(trim(piece), where + " transform '" + item + "'"));
        if (name == "shift" && args.size() == 1) {
            out.push_back(Transform::shift(args[0]));
        } else if (name == "extract" && args.size() == 2) {
            try {
                (void)ProgressionSelector(args[0], args[1]);
            } catch (const DomainError& err) {
                throw CatalogError(where + ": " + err.what());
            }
            out.push_back(Transform::extract(args[0], args[1]));
        } else if (name == "substitute_qpow" && args.size() == 1) {
            if (args[0] < 1) throw CatalogError(where + ": substitute_qpow needs m >= 1");
            out.push_back(Transform::substitute(args[0]));
        } else {
            throw CatalogError(where + ": unknown transform '" + item + "'");
        }
    }
    return out;
}

std::string render_pipeline(const std::vector<Transform>& pipeline) {
    std::string out;
    for (const Transform& t : pipeline) {
        if (!out.empty()) out += " ";
        switch (t.kind) {
            case Transform::Kind::Shift:
                out += "shift(" + std::to_string(t.a) + ")";
                break;
            case Transform::Kind::Extract:
                out += "extract(" + std::to_string(t.a) + "," + std::to_string(t.b) + ")";
                break;
            case Transform::Kind::SubstituteQPow:
                out += "substitute_qpow(" + std::to_string(t.a) + ")";
                break;
        }
    }
    return out;
}

struct Section {
    std::string kind;
    std::string id;
    std::vector<std::pair<std::string, std::string>> fields;
    int line = 0;
};

const std::string* field(const Section& s, const std::string& key) {
    for (const auto& [k, v] : s.fields)
        if (k == key) return &v;
    return nullptr;
}

const std::string& require_field(const Section& s, const std::string& key) {
    const std::string* v = field(s, key);
    if (!v) throw CatalogError(s.kind + " '" + s.id + "': missing field '" + key + "'");
    return *v;
}

IdentityRecord build_identity(const Section& sec) {
    IdentityRecord rec;
    rec.id = sec.id;
    std::string where = "identity '" + sec.id + "'";
    rec.lhs_text = require_field(sec, "lhs");
    rec.rhs_text = require_field(sec, "rhs");
    if (const std::string* p = field(sec, "pipeline")) rec.pipeline = parse_pipeline(*p, where);
    if (const std::string* r = field(sec, "ref")) rec.ref = *r;
    std::istringstream win(require_field(sec, "window"));
    std::string lo_s, hi_s, extra;
    if (!(win >> lo_s >> hi_s) || (win >> extra))
        throw CatalogError(where + ": window must be two integers 'lo hi'");
    rec.lo = parse_int(lo_s, where + " window");
    rec.hi = parse_int(hi_s, where + " window");
    if (rec.lo >= rec.hi) throw CatalogError(where + ": window needs lo < hi");
    try {
        rec.lhs = parse_qexpr(rec.lhs_text);
    } catch (const std::exception& err) {
        throw CatalogError(where + " lhs: " + err.what());
    }
    try {
        rec.rhs = parse_qexpr(rec.rhs_text);
    } catch (const std::exception& err) {
        throw CatalogError(where + " rhs: " + err.what());
    }
    return rec;
}

CongruenceFamily build_family(const Section& sec) {
    CongruenceFamily fam;
    fam.id = sec.id;
    std::string where = "congruence '" + sec.id + "'";
    auto kexpr = [&](const std::string& key) {
        try {
            return KExpression(require_field(sec, key));
        } catch (const CatalogError& err) {
            throw CatalogError(where + " field '" + key + "': " + err.what());
        }
    };
    fam.a = kexpr("a");
    fam.b = kexpr("b");
    fam.modulus = kexpr("modulus");
    if (const std::string* r = field(sec, "ref")) fam.ref = *r;
    std::string side = field(sec, "side") ? *field(sec, "side") : "none";
    if (side == "none")
        fam.side = CongruenceFamily::Side::None;
    else if (side == "notdiv3")
        fam.side = CongruenceFamily::Side::NotDivisibleBy3;
    else
        throw CatalogError(where + ": unknown side condition '" + side + "'");
    std::istringstream kr(require_field(sec, "krange"));
    std::string kmin_s, kmax_s, extra;
    if (!(kr >> kmin_s >> kmax_s) || (kr >> extra))
        throw CatalogError(where + ": krange must be two integers 'kmin kmax'");
    fam.k_min = parse_int(kmin_s, where + " krange");
    fam.k_max = parse_int(kmax_s, where + " krange");
    fam.n_max = parse_int(require_field(sec, "nmax"), where + " nmax");
    if (fam.k_min < 0 || fam.k_min > fam.k_max)
        throw CatalogError(where + ": need 0 <= kmin <= kmax");
    if (fam.n_max < 0) throw CatalogError(where + ": nmax must be >= 0");
    for (std::int64_t k = fam.k_min; k <= fam.k_max; ++k) {
        if (fam.a.eval(k) < 1) throw CatalogError(where + ": a(k) must be >= 1 at k=" + std::to_string(k));
        if (fam.b.eval(k) < 0) throw CatalogError(where + ": b(k) must be >= 0 at k=" + std::to_string(k));
        if (fam.modulus.eval(k) < 2)
            throw CatalogError(where + ": modulus(k) must be >= 2 at k=" + std::to_string(k));
    }
    return fam;
}

} // namespace

Catalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file: " + path.string());
    Catalog catalog;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    Section current;
    bool in_section = false;
    auto finish = [&]() {
        if (current.kind == "identity") {
            catalog.identities.push_back(build_identity(current));
        } else {
            catalog.families.push_back(build_family(current));
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header_seen) {
            if (t != "qseries-catalog v1")
                throw CatalogError("line " + std::to_string(lineno) +
                                   ": expected header 'qseries-catalog v1'");
            header_seen = true;
            continue;
        }
        if (!in_section) {
            std::istringstream head(t);
            std::string kind, id, extra;
            if (!(head >> kind >> id) || (head >> extra) ||
                (kind != "identity" && kind != "congruence"))
                throw CatalogError("line " + std::to_string(lineno) +
                                   ": expected 'identity <id>' or 'congruence <id>'");
            current = Section{kind, id, {}, lineno};
            in_section = true;
            continue;
        }
        if (t == "end") {
            finish();
            in_section = false;
            continue;
        }
        auto sp = t.find_first_of(" \t");
        if (sp == std::string::npos)
            throw CatalogError("line " + std::to_string(lineno) + ": expected 'key value'");
        current.fields.emplace_back(t.substr(0, sp), trim(t.substr(sp + 1)));
    }
    if (in_section)
        throw CatalogError("unterminated section '" + current.id + "' (missing 'end')");
    if (!header_seen) throw CatalogError("empty catalog file: " + path.string());
    for (std::size_t i = 0; i < catalog.identities.size(); ++i)
        for (std::size_t j = i + 1; j < catalog.identities.size(); ++j)
            if (catalog.identities[i].id == catalog.identities[j].id)
                throw CatalogError("duplicate identity id '" + catalog.identities[i].id + "'");
    return catalog;
}

std::string serialize_catalog(const Catalog& catalog) {
    std::ostringstream out;
    out << "qseries-catalog v1\n";
    for (const auto& rec : catalog.identities) {
        out << "\nidentity " << rec.id << "\n";
        out << "  lhs " << rec.lhs_text << "\n";
        if (!rec.pipeline.empty()) out << "  pipeline " << render_pipeline(rec.pipeline) << "\n";
        out << "  rhs " << rec.rhs_text << "\n";
        out << "  window " << rec.lo << " " << rec.hi << "\n";
        if (!rec.ref.empty()) out << "  ref " << rec.ref << "\n";
        out << "end\n";
    }
    for (const auto& fam : catalog.families) {
        out << "\ncongruence " << fam.id << "\n";
        out << "  a " << fam.a.text() << "\n";
        out << "  b " << fam.b.text() << "\n";
        out << "  modulus " << fam.modulus.text() << "\n";
        out << "  side "
            << (fam.side == CongruenceFamily::Side::NotDivisibleBy3 ? "notdiv3" : "none") << "\n";
        out << "  krange " << fam.k_min << " " << fam.k_max << "\n";
        out << "  nmax " << fam.n_max << "\n";
        if (!fam.ref.empty()) out << "  ref " << fam.ref << "\n";
        out << "end\n";
    }
    return out.str();
}

std::filesystem::path default_catalog_path() {
    if (const char* env = std::getenv("QSERIES_CATALOG")) return env;
    std::filesystem::path local = "data/identities.cat";
    if (std::filesystem::exists(local)) return local;
#ifdef QSERIES_SOURCE_DATA_DIR
    return std::filesystem::path(QSERIES_SOURCE_DATA_DIR) / "identities.cat";
#else
    return local;
#endif
}

} // namespace qseries
