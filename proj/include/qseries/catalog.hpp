#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qseries/laurent_series.hpp"
#include "qseries/qexpr.hpp"
#include "qseries/rational.hpp"

namespace qseries {

/// One step of an identity's left-hand-side pipeline.
struct Transform {
    enum class Kind { Shift, Extract, SubstituteQPow };
    Kind kind;
    std::int64_t a = 0; // shift amount | extract modulus | substitution power
    std::int64_t b = 0; // extract residue

    static Transform shift(std::int64_t k) { return {Kind::Shift, k, 0}; }
    static Transform extract(std::int64_t t, std::int64_t r) { return {Kind::Extract, t, r}; }
    static Transform substitute(std::int64_t m) { return {Kind::SubstituteQPow, m, 0}; }
};

bool operator==(const Transform& x, const Transform& y);

LaurentSeries apply_pipeline(const LaurentSeries& s, const std::vector<Transform>& pipeline);

/// Source precision needed so the pipelined series still knows [*, hi).
std::int64_t pipeline_source_precision(const std::vector<Transform>& pipeline, std::int64_t hi);

/// A named series identity: expand lhs, push it through the pipeline, and it
/// must match rhs exactly on [lo, hi).
struct IdentityRecord {
    std::string id;
    std::string lhs_text;
    std::string rhs_text;
    std::vector<Transform> pipeline;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::string ref;

    QExprPtr lhs; // parsed at load
    QExprPtr rhs;
};

/// Closed-form integer expression in the parameter k (grammar: integers,
/// 'k', + - * / ^ and parentheses; all arithmetic exact, the result must be
/// an integer).
class KExpression {
public:
    KExpression() = default;
    explicit KExpression(std::string text);

    Integer eval(std::int64_t k) const;
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

/// Family of congruences: for k in [k_min, k_max] and n in [0, n_max]
/// satisfying the side condition, modulus(k) divides the coefficient at
/// index a(k)*n + b(k).
struct CongruenceFamily {
    enum class Side { None, NotDivisibleBy3 };

    std::string id;
    KExpression a;
    KExpression b;
    KExpression modulus;
    Side side = Side::None;
    std::int64_t k_min = 0;
    std::int64_t k_max = 0;
    std::int64_t n_max = 0;
    std::string ref;
};

struct Catalog {
    std::vector<IdentityRecord> identities;
    std::vector<CongruenceFamily> families;

    const IdentityRecord* find_identity(const std::string& id) const;
    const CongruenceFamily* find_family(const std::string& id) const;
};

/// Loads and fully validates a catalog file (versioned header line,
/// line-oriented sections; see docs/formats.md). Throws CatalogError with
/// the record id and field on schema violations, ParseError on expression
/// syntax errors.
Catalog load_catalog(const std::filesystem::path& path);

/// Inverse of load_catalog up to whitespace: reloading the serialization
/// yields structurally equal records.
std::string serialize_catalog(const Catalog& catalog);

/// Resolution order: QSERIES_CATALOG env var, ./data/identities.cat,
/// compiled-in source data directory.
std::filesystem::path default_catalog_path();

} // namespace qseries
