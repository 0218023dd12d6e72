#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qseries/catalog.hpp"
#include "qseries/laurent_series.hpp"
#include "qseries/rational.hpp"

namespace qseries {

enum class CheckStatus { Pass, Fail, InsufficientPrecision };

struct CheckResult {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    // A failure always carries the witness: first mismatching exponent and
    // both exact coefficients.
    std::optional<std::int64_t> witness_exp;
    std::string lhs_coeff;
    std::string rhs_coeff;
    std::string message;          // precision/budget detail on non-pass
    std::vector<std::string> info; // informational notes, never assertions
    double wall_ms = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> items;

    std::size_t count(CheckStatus s) const;
    bool all_passed() const { return count(CheckStatus::Pass) == items.size(); }
    /// 0 all pass, 1 assertion failure, 2 insufficient precision or budget.
    int exit_code() const;
};

/// Parameters of the k-th member of the linear-identity family: index offset
/// b(k) = (3^{2k+2}-5)/4, multiplier (3^{4k+4}-1)/80, congruence modulus
/// 3(3^{4k+4}-1)/40, and the elimination constants
///   R_k = (3^{2k}-1)(3^{2k+2}-1)/640,
///   S_k = -(3^{2k}-9)(3^{2k+2}-1)/64,
///   T_k = 81(3^{2k}-1)(3^{2k}-9)/640.
/// Construction asserts the divisibility bookkeeping (b, multiplier and
/// modulus are integers) and R_k + S_k + T_k = 1.
struct FamilyParams {
    std::int64_t k;
    Integer step;       // 3^{2k+1}
    Integer b;
    Integer multiplier;
    Integer modulus;
    Rational R, S, T;

    static FamilyParams for_k(std::int64_t k);
};

/// The shared A4 expansion (f4^8/f1^2), grown on demand and cached;
/// thread-safe, read-only result.
std::shared_ptr<const LaurentSeries> a4_series(std::int64_t prec, std::int64_t budget);

/// True iff every stored coefficient has denominator 1.
bool assert_integral(const LaurentSeries& s);

/// Expands both sides independently, pushes the lhs through the record's
/// pipeline, and compares exactly on [lo, hi). order_override replaces the
/// record's hi when positive.
CheckResult check_identity(const IdentityRecord& rec, std::int64_t order_override,
                           std::int64_t budget);

/// Pipeline route vs closed form on [0, order): the (3,1)-extraction of the
/// A4 series followed by k rounds of shift(-3), extract(3,0), extract(3,1)
/// must equal the three-term closed form for the k-th family member.
CheckResult check_theorem_1_1(std::int64_t k, std::int64_t order, std::int64_t budget);

/// For n <= n_max with 3 nmid n: the exact multiplier identity for the k-th
/// family member, its congruence, and the two-term elimination identity with
/// R_k and S_k. Complementary n (3 | n) are observed and logged, never
/// asserted.
CheckResult check_theorem_1_2(std::int64_t k, std::int64_t n_max, std::int64_t budget);

/// The three-term linear identity with R_k, S_k, T_k for ALL n <= n_max (no
/// side condition), plus the exact constant identity R_k + S_k + T_k = 1 for
/// k <= 20.
CheckResult check_theorem_4_1(std::int64_t k, std::int64_t n_max, std::int64_t budget);

/// Built-in scan: A4(27n+19) = 82*A4(3n+1) for n <= n_max with 3 nmid n.
CheckResult check_theorem_3_6(std::int64_t n_max, std::int64_t budget);

/// Asserts modulus(k) | coefficient(a(k)*n + b(k)) of the series for every
/// (k, n) in range passing the side condition. Non-integer coefficients are
/// a hard failure (they would mean an upstream expansion bug).
CheckResult scan_congruence(const CongruenceFamily& fam, const LaurentSeries& series);

/// Convenience: sizes the A4 expansion for the family and scans it.
CheckResult scan_congruence_a4(const CongruenceFamily& fam, std::int64_t budget);

struct VerifySelection {
    bool all = true;
    std::vector<std::string> ids;
};

/// Runs catalog identities (and the built-in 'thm3.6' check) deterministically
/// in catalog order; jobs > 1 distributes the checks over a thread pool
/// without changing the report order. order_override > 0 replaces each
/// record's window top; built-in scans reuse it as their n_max.
VerificationReport run_verification(const Catalog& catalog, const VerifySelection& sel,
                                    std::int64_t order_override, std::int64_t budget,
                                    int jobs);

} // namespace qseries
