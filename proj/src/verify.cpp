#include "qseries/verify.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "qseries/dissect.hpp"
#include "qseries/errors.hpp"

namespace qseries {

namespace {

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

std::int64_t as_index(const Integer& v, const std::string& what) {
    if (!v.fits_slong_p())
        throw BudgetError(what + " needs coefficient index " + v.get_str() +
                              ", far beyond any feasible expansion",
                          std::numeric_limits<std::int64_t>::max(), 0);
    return v.get_si();
}

bool divisible(const Rational& value, const Integer& m) {
    return mpz_divisible_p(mpq_numref(value.get_mpq_t()), m.get_mpz_t()) != 0;
}

template <typename Fn>
CheckResult guarded(std::string id, Fn&& body) {
    CheckResult res;
    res.id = std::move(id);
    Timer timer;
    try {
        body(res);
    } catch (const BudgetError& err) {
        res.status = CheckStatus::InsufficientPrecision;
        res.message = err.what();
    } catch (const PrecisionError& err) {
        res.status = CheckStatus::InsufficientPrecision;
        res.message = err.what();
    }
    res.wall_ms = timer.ms();
    return res;
}

void fail_with_witness(CheckResult& res, std::int64_t exponent, const Rational& lhs,
                       const Rational& rhs, const std::string& message) {
    res.status = CheckStatus::Fail;
    res.witness_exp = exponent;
    res.lhs_coeff = to_string(lhs);
    res.rhs_coeff = to_string(rhs);
    res.message = message;
}

QExprPtr theorem_1_1_rhs(std::int64_t k) {
    static const QExprPtr t1 = parse_qexpr("f2^12/f1^6");
    static const QExprPtr t2 = parse_qexpr("3*f2^2*f3^10/(f1^4*f6^2) + 4*q*f3*f6^7/(f1*f2)");
    static const QExprPtr t3 = parse_qexpr("q^3*f12^8/f3^2");
    unsigned long uk = static_cast<unsigned long>(k);
    Integer p2 = pow3(2 * uk + 2);
    Rational c1 = make_rational(p2 - 1, Integer(4));
    Rational c2 = make_rational(27 * (pow3(2 * uk) - 1) * (p2 - 1), Integer(320));
    Rational c3(p2);
    return QExpr::add({QExpr::mul({QExpr::constant(c1), t1}),
                       QExpr::mul({QExpr::constant(c2), t2}),
                       QExpr::mul({QExpr::constant(c3), t3})});
}

std::vector<Transform> theorem_1_1_pipeline(std::int64_t k) {
    std::vector<Transform> pl{Transform::extract(3, 1)};
    for (std::int64_t i = 0; i < k; ++i) {
        pl.push_back(Transform::shift(-3));
        pl.push_back(Transform::extract(3, 0));
        pl.push_back(Transform::extract(3, 1));
    }
    return pl;
}

} // namespace

std::size_t VerificationReport::count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& item : items)
        if (item.status == s) ++n;
    return n;
}

int VerificationReport::exit_code() const {
    if (count(CheckStatus::Fail) > 0) return 1;
    if (count(CheckStatus::InsufficientPrecision) > 0) return 2;
    return 0;
}

FamilyParams FamilyParams::for_k(std::int64_t k) {
    if (k < 0) throw DomainError("family parameter k must be >= 0");
    unsigned long uk = static_cast<unsigned long>(k);
    FamilyParams fp;
    fp.k = k;
    fp.step = pow3(2 * uk + 1);
    Integer p2 = pow3(2 * uk + 2);  // 3^{2k+2}
    Integer p4 = pow3(4 * uk + 4);  // 3^{4k+4}
    Integer p0 = pow3(2 * uk);      // 3^{2k}
    auto exact = [](const Integer& num, long den, const char* what) {
        if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(den)))
            throw DomainError(std::string("divisibility bookkeeping broken for ") + what);
        return Integer(num / den);
    };
    fp.b = exact(p2 - 5, 4, "b(k) = (3^{2k+2}-5)/4");
    fp.multiplier = exact(p4 - 1, 80, "multiplier (3^{4k+4}-1)/80");
    fp.modulus = exact(3 * (p4 - 1), 40, "modulus 3(3^{4k+4}-1)/40");
    fp.R = make_rational((p0 - 1) * (p2 - 1), Integer(640));
    fp.S = -make_rational((p0 - 9) * (p2 - 1), Integer(64));
    fp.T = make_rational(81 * (p0 - 1) * (p0 - 9), Integer(640));
    if (fp.R + fp.S + fp.T != 1)
        throw DomainError("elimination constants do not sum to 1 at k=" + std::to_string(k));
    return fp;
}

std::shared_ptr<const LaurentSeries> a4_series(std::int64_t prec, std::int64_t budget) {
    static std::mutex mutex;
    static std::shared_ptr<const LaurentSeries> cache;
    static const QExprPtr a4_expr = parse_qexpr("f4^8/f1^2");
    std::lock_guard<std::mutex> lock(mutex);
    if (cache && cache->prec() >= prec) return cache;
    ExpandOptions opts;
    opts.budget = budget;
    cache = std::make_shared<const LaurentSeries>(expand(*a4_expr, prec, opts));
    return cache;
}

bool assert_integral(const LaurentSeries& s) {
    for (const Rational& c : s.coeffs())
        if (!is_integer(c)) return false;
    return true;
}

CheckResult check_identity(const IdentityRecord& rec, std::int64_t order_override,
                           std::int64_t budget) {
    return guarded(rec.id, [&](CheckResult& res) {
        std::int64_t hi = order_override > 0 ? order_override : rec.hi;
        std::int64_t lo = rec.lo;
        if (lo >= hi)
            throw DomainError("identity '" + rec.id + "': window [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + ") is empty");
        res.lo = lo;
        res.hi = hi;
        ExpandOptions opts;
        opts.budget = budget;
        std::int64_t needed = std::max<std::int64_t>(pipeline_source_precision(rec.pipeline, hi), 1);
        LaurentSeries lhs = apply_pipeline(expand(*rec.lhs, needed, opts), rec.pipeline);
        LaurentSeries rhs = expand(*rec.rhs, hi, opts);
        if (auto w = first_difference(lhs, rhs, lo, hi))
            fail_with_witness(res, *w, lhs.coeff(*w), rhs.coeff(*w), "coefficient mismatch");
    });
}

CheckResult check_theorem_1_1(std::int64_t k, std::int64_t order, std::int64_t budget) {
    return guarded("thm1.1[k=" + std::to_string(k) + "]", [&](CheckResult& res) {
        if (k < 0 || order < 1) throw DomainError("thm1.1 needs k >= 0 and order >= 1");
        res.lo = 0;
        res.hi = order;
        std::vector<Transform> pl = theorem_1_1_pipeline(k);
        std::int64_t needed = pipeline_source_precision(pl, order);
        if (needed > budget)
            throw BudgetError("k=" + std::to_string(k) + " needs the A4 series to " +
                                  std::to_string(needed) + " coefficients, above the budget " +
                                  std::to_string(budget),
                              needed, budget);
        auto a4 = a4_series(needed, budget);
        LaurentSeries lhs = apply_pipeline(*a4, pl);
        ExpandOptions opts;
        opts.budget = budget;
        LaurentSeries rhs = expand(*theorem_1_1_rhs(k), order, opts);
        res.info.push_back("A4 source precision " + std::to_string(needed));
        if (auto w = first_difference(lhs, rhs, 0, order))
            fail_with_witness(res, *w, lhs.coeff(*w), rhs.coeff(*w),
                              "dissection pipeline disagrees with the closed form");
    });
}

CheckResult check_theorem_1_2(std::int64_t k, std::int64_t n_max, std::int64_t budget) {
    return guarded("thm1.2[k=" + std::to_string(k) + "]", [&](CheckResult& res) {
        if (k < 0 || n_max < 0) throw DomainError("thm1.2 needs k >= 0 and n_max >= 0");
        FamilyParams fp = FamilyParams::for_k(k);
        Integer top = fp.step * n_max + fp.b;
        if (27 * n_max + 19 > top) top = 27 * n_max + 19;
        std::int64_t needed = as_index(top, "thm1.2") + 1;
        if (needed > budget)
            throw BudgetError("k=" + std::to_string(k) + " needs the A4 series to " +
                                  std::to_string(needed) + " coefficients, above the budget " +
                                  std::to_string(budget),
                              needed, budget);
        auto a4 = a4_series(needed, budget);
        res.lo = 0;
        res.hi = n_max + 1;
        res.info.push_back("multiplier " + fp.multiplier.get_str() + ", modulus " +
                           fp.modulus.get_str());
        std::int64_t complementary_checked = 0, complementary_held = 0;
        std::optional<std::int64_t> first_complementary_failure;
        for (std::int64_t n = 0; n <= n_max; ++n) {
            std::int64_t idx = as_index(fp.step * n + fp.b, "thm1.2");
            const Rational& lhsv = a4->coeff(idx);
            if (!is_integer(lhsv)) {
                fail_with_witness(res, idx, lhsv, Rational(0),
                                  "non-integer coefficient (upstream expansion bug)");
                return;
            }
            Rational eq12 = Rational(fp.multiplier) * a4->coeff(3 * n + 1);
            if (n % 3 == 0) {
                ++complementary_checked;
                if (lhsv == eq12)
                    ++complementary_held;
                else if (!first_complementary_failure)
                    first_complementary_failure = n;
                continue;
            }
            if (lhsv != eq12) {
                fail_with_witness(res, idx, lhsv, eq12,
                                  "multiplier identity fails at n=" + std::to_string(n));
                return;
            }
            if (!divisible(lhsv, fp.modulus)) {
                fail_with_witness(res, idx, lhsv, Rational(fp.modulus),
                                  "congruence fails at n=" + std::to_string(n));
                return;
            }
            Rational eq46 = fp.R * a4->coeff(27 * n + 19) + fp.S * a4->coeff(3 * n + 1);
            if (lhsv != eq46) {
                fail_with_witness(res, idx, lhsv, eq46,
                                  "two-term elimination identity fails at n=" + std::to_string(n));
                return;
            }
        }
        res.info.push_back("3|n (not asserted): multiplier identity held " +
                           std::to_string(complementary_held) + "/" +
                           std::to_string(complementary_checked) +
                           (first_complementary_failure
                                ? ", first failing n=" + std::to_string(*first_complementary_failure)
                                : ""));
    });
}

CheckResult check_theorem_4_1(std::int64_t k, std::int64_t n_max, std::int64_t budget) {
    return guarded("thm4.1[k=" + std::to_string(k) + "]", [&](CheckResult& res) {
        if (k < 0 || n_max < 0) throw DomainError("thm4.1 needs k >= 0 and n_max >= 0");
        FamilyParams fp = FamilyParams::for_k(k);
        unsigned long uk = static_cast<unsigned long>(k);
        Integer p2 = pow3(2 * uk + 2);
        Integer offset = 5 * (p2 - 1) / 4; // 3^{2k+2} ≡ 1 (mod 4), exact
        Integer top = p2 * n_max + offset;
        if (81 * n_max + 100 > top) top = 81 * n_max + 100;
        std::int64_t needed = as_index(top, "thm4.1") + 1;
        if (needed > budget)
            throw BudgetError("k=" + std::to_string(k) + " needs the A4 series to " +
                                  std::to_string(needed) + " coefficients, above the budget " +
                                  std::to_string(budget),
                              needed, budget);
        auto a4 = a4_series(needed, budget);
        res.lo = 0;
        res.hi = n_max + 1;
        for (std::int64_t n = 0; n <= n_max; ++n) {
            std::int64_t idx = as_index(p2 * n + offset, "thm4.1");
            const Rational& lhsv = a4->coeff(idx);
            if (!is_integer(lhsv)) {
                fail_with_witness(res, idx, lhsv, Rational(0),
                                  "non-integer coefficient (upstream expansion bug)");
                return;
            }
            Rational rhsv = fp.R * a4->coeff(81 * n + 100) + fp.S * a4->coeff(9 * n + 10) +
                            fp.T * a4->coeff(n);
            if (lhsv != rhsv) {
                fail_with_witness(res, idx, lhsv, rhsv,
                                  "three-term linear identity fails at n=" + std::to_string(n));
                return;
            }
        }
        for (std::int64_t kk = 0; kk <= 20; ++kk) {
            unsigned long ukk = static_cast<unsigned long>(kk);
            Integer pk0 = pow3(2 * ukk);
            Integer pk2 = pow3(2 * ukk + 2);
            Rational sum = make_rational((pk0 - 1) * (pk2 - 1), Integer(640)) -
                           make_rational((pk0 - 9) * (pk2 - 1), Integer(64)) +
                           make_rational(81 * (pk0 - 1) * (pk0 - 9), Integer(640));
            if (sum != 1) {
                fail_with_witness(res, kk, sum, Rational(1),
                                  "elimination constants do not sum to 1");
                return;
            }
        }
        res.info.push_back("R_k + S_k + T_k = 1 holds exactly for k <= 20");
    });
}

CheckResult check_theorem_3_6(std::int64_t n_max, std::int64_t budget) {
    return guarded("thm3.6", [&](CheckResult& res) {
        if (n_max < 0) throw DomainError("thm3.6 needs n_max >= 0");
        std::int64_t needed = 27 * n_max + 20;
        if (needed > budget)
            throw BudgetError("scan needs the A4 series to " + std::to_string(needed) +
                                  " coefficients, above the budget " + std::to_string(budget),
                              needed, budget);
        auto a4 = a4_series(needed, budget);
        res.lo = 0;
        res.hi = n_max + 1;
        std::int64_t complementary_checked = 0, complementary_held = 0;
        for (std::int64_t n = 0; n <= n_max; ++n) {
            const Rational& big = a4->coeff(27 * n + 19);
            Rational small = Rational(82) * a4->coeff(3 * n + 1);
            if (n % 3 == 0) {
                ++complementary_checked;
                if (big == small) ++complementary_held;
                continue;
            }
            if (big != small) {
                fail_with_witness(res, 27 * n + 19, big, small,
                                  "82x identity fails at n=" + std::to_string(n));
                return;
            }
        }
        res.info.push_back("3|n (not asserted): held " + std::to_string(complementary_held) + "/" +
                           std::to_string(complementary_checked));
    });
}

CheckResult scan_congruence(const CongruenceFamily& fam, const LaurentSeries& series) {
    return guarded(fam.id, [&](CheckResult& res) {
        res.lo = 0;
        res.hi = fam.n_max + 1;
        std::int64_t complementary_checked = 0, complementary_held = 0;
        for (std::int64_t k = fam.k_min; k <= fam.k_max; ++k) {
            Integer a = fam.a.eval(k);
            Integer b = fam.b.eval(k);
            Integer m = fam.modulus.eval(k);
            for (std::int64_t n = 0; n <= fam.n_max; ++n) {
                std::int64_t idx = as_index(a * n + b, "congruence '" + fam.id + "'");
                const Rational& c = series.coeff(idx); // PrecisionError if uncovered
                if (!is_integer(c)) {
                    fail_with_witness(res, idx, c, Rational(m),
                                      "non-integer coefficient (upstream expansion bug)");
                    return;
                }
                bool skip = fam.side == CongruenceFamily::Side::NotDivisibleBy3 && n % 3 == 0;
                if (skip) {
                    ++complementary_checked;
                    if (divisible(c, m)) ++complementary_held;
                    continue;
                }
                if (!divisible(c, m)) {
                    fail_with_witness(res, idx, c, Rational(m),
                                      "coefficient not divisible at k=" + std::to_string(k) +
                                          ", n=" + std::to_string(n));
                    return;
                }
            }
        }
        if (complementary_checked > 0)
            res.info.push_back("side-condition complement (not asserted): divisible " +
                               std::to_string(complementary_held) + "/" +
                               std::to_string(complementary_checked));
    });
}

CheckResult scan_congruence_a4(const CongruenceFamily& fam, std::int64_t budget) {
    CheckResult sized = guarded(fam.id, [&](CheckResult&) {
        Integer top(0);
        for (std::int64_t k = fam.k_min; k <= fam.k_max; ++k) {
            Integer idx = fam.a.eval(k) * fam.n_max + fam.b.eval(k);
            if (idx > top) top = idx;
        }
        std::int64_t needed = as_index(top, "congruence '" + fam.id + "'") + 1;
        if (needed > budget)
            throw BudgetError("scan needs the source series to " + std::to_string(needed) +
                                  " coefficients, above the budget " + std::to_string(budget),
                              needed, budget);
        a4_series(needed, budget);
    });
    if (sized.status != CheckStatus::Pass) return sized;
    auto a4 = a4_series(1, budget); // already grown above
    return scan_congruence(fam, *a4);
}

VerificationReport run_verification(const Catalog& catalog, const VerifySelection& sel,
                                    std::int64_t order_override, std::int64_t budget, int jobs) {
    struct Task {
        enum class Kind { Identity, Thm36 } kind;
        const IdentityRecord* rec = nullptr;
    };
    std::vector<Task> tasks;
    if (sel.all) {
        for (const auto& rec : catalog.identities)
            tasks.push_back({Task::Kind::Identity, &rec});
        tasks.push_back({Task::Kind::Thm36, nullptr});
    } else {
        for (const std::string& id : sel.ids) {
            if (id == "thm3.6") {
                tasks.push_back({Task::Kind::Thm36, nullptr});
                continue;
            }
            const IdentityRecord* rec = catalog.find_identity(id);
            if (!rec) {
                std::string known;
                for (const auto& r : catalog.identities) known += " " + r.id;
                known += " thm3.6";
                throw DomainError("unknown identity id '" + id + "'; known ids:" + known);
            }
            tasks.push_back({Task::Kind::Identity, rec});
        }
    }

    VerificationReport report;
    report.items.resize(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                if (tasks[i].kind == Task::Kind::Identity) {
                    report.items[i] = check_identity(*tasks[i].rec, order_override, budget);
                } else {
                    std::int64_t n_max = order_override > 0 ? order_override : 200;
                    report.items[i] = check_theorem_3_6(n_max, budget);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int nthreads = std::max(1, jobs);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return report;
}

} // namespace qseries
