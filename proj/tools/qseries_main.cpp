#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qseries/catalog.hpp"
#include "qseries/corecount.hpp"
#include "qseries/dissect.hpp"
#include "qseries/errors.hpp"
#include "qseries/qexpr.hpp"
#include "qseries/report.hpp"
#include "qseries/verify.hpp"

namespace {

using namespace qseries;

constexpr std::int64_t kDefaultBudget = 50000;
constexpr std::int64_t kDefaultOrder = 300;

std::int64_t env_budget() {
    if (const char* env = std::getenv("QSERIES_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (...) {
            throw DomainError("QSERIES_BUDGET is not an integer");
        }
    }
    return kDefaultBudget;
}

// Exit codes: 0 all checks pass, 1 assertion failure, 2 insufficient
// precision or budget, 3 usage/parse/input errors.
constexpr int kExitFail = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitUsage = 3;

void print_series(const LaurentSeries& s, std::int64_t order, OutputFormat format,
                  const std::string& expr_text,
                  const std::vector<std::pair<std::string, std::int64_t>>& extra) {
    std::int64_t start = s.valuation().value_or(order);
    switch (format) {
        case OutputFormat::Table: {
            if (start >= order) {
                std::cout << "0 (no nonzero coefficient below q^" << order << ")\n";
                return;
            }
            for (std::int64_t e = start; e < order; ++e)
                std::cout << e << ": " << to_string(s.coeff(e)) << "\n";
            return;
        }
        case OutputFormat::Csv: {
            std::cout << "exponent,value\n";
            for (std::int64_t e = start; e < order; ++e)
                std::cout << e << "," << to_string(s.coeff(e)) << "\n";
            return;
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json doc;
            doc["schema"] = "qseries.series/1";
            doc["expr"] = expr_text;
            for (const auto& [key, value] : extra) doc[key] = value;
            doc["order"] = order;
            if (start >= order)
                doc["valuation"] = nullptr;
            else
                doc["valuation"] = start;
            doc["coefficients"] = nlohmann::ordered_json::array();
            for (std::int64_t e = start; e < order; ++e)
                doc["coefficients"].push_back({{"exponent", e}, {"value", to_string(s.coeff(e))}});
            std::cout << doc.dump(2) << "\n";
            return;
        }
    }
}

int cmd_expand(const std::string& expr_text, std::int64_t order, std::int64_t budget,
               OutputFormat format) {
    QExprPtr expr = parse_qexpr(expr_text);
    ExpandOptions opts;
    opts.budget = budget;
    LaurentSeries s = expand(*expr, order, opts);
    print_series(s, order, format, expr_text, {});
    return 0;
}

int cmd_dissect(const std::string& expr_text, std::int64_t mod, std::int64_t res,
                std::int64_t order, std::int64_t budget, OutputFormat format) {
    ProgressionSelector sel(mod, res); // validates, usage error on bad residue
    QExprPtr expr = parse_qexpr(expr_text);
    ExpandOptions opts;
    opts.budget = budget;
    std::int64_t needed = std::max<std::int64_t>(mod * (order - 1) + res + 1, 1);
    LaurentSeries s = extract(expand(*expr, needed, opts), sel);
    print_series(s, order, format, expr_text, {{"modulus", mod}, {"residue", res}});
    return 0;
}

int cmd_verify(const std::string& catalog_path, bool all, const std::vector<std::string>& ids,
               std::int64_t order, std::int64_t budget, int jobs, OutputFormat format,
               bool timings) {
    Catalog catalog = load_catalog(catalog_path);
    VerifySelection sel;
    sel.all = all || ids.empty();
    sel.ids = ids;
    VerificationReport report = run_verification(catalog, sel, order, budget, jobs);
    std::cout << render_report(report, format, timings);
    return report.exit_code();
}

int cmd_family(const std::string& catalog_path, const std::string& name, std::int64_t k_max,
               std::int64_t n_max, std::int64_t budget, OutputFormat format, bool timings) {
    VerificationReport report;
    if (name == "thm1.1" || name == "thm1.2" || name == "thm4.1") {
        if (k_max < 0) k_max = 0;
        for (std::int64_t k = 0; k <= k_max; ++k) {
            if (name == "thm1.1")
                report.items.push_back(check_theorem_1_1(k, n_max, budget));
            else if (name == "thm1.2")
                report.items.push_back(check_theorem_1_2(k, n_max, budget));
            else
                report.items.push_back(check_theorem_4_1(k, n_max, budget));
        }
    } else if (name == "cong3.2" || name == "cong3.7" || name == "cong1.3") {
        Catalog catalog = load_catalog(catalog_path);
        const CongruenceFamily* fam = catalog.find_family(name);
        if (!fam) throw CatalogError("catalog has no congruence family '" + name + "'");
        CongruenceFamily scoped = *fam;
        if (n_max >= 0) scoped.n_max = n_max;
        if (k_max >= 0) {
            if (k_max < scoped.k_min)
                throw DomainError("--kmax below the family's minimum k " +
                                  std::to_string(scoped.k_min));
            scoped.k_max = k_max;
        }
        report.items.push_back(scan_congruence_a4(scoped, budget));
    } else {
        throw DomainError("unknown family '" + name +
                          "'; known: thm1.1 thm1.2 thm4.1 cong3.2 cong3.7 cong1.3");
    }
    std::cout << render_report(report, format, timings);
    return report.exit_code();
}

int cmd_oracle(int t, int max_n, bool compare, std::int64_t budget, OutputFormat format) {
    CoreCountTable cores = count_cores(t, max_n);
    std::vector<std::int64_t> pairs = count_pairs(t, max_n);
    LaurentSeries core_series, pair_series;
    if (compare) {
        ExpandOptions opts;
        opts.budget = budget;
        std::string ft = "f" + std::to_string(t);
        core_series = expand(*parse_qexpr(ft + "^" + std::to_string(t) + "/f1"), max_n + 1, opts);
        pair_series =
            expand(*parse_qexpr(ft + "^" + std::to_string(2 * t) + "/f1^2"), max_n + 1, opts);
    }
    bool all_match = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream table, csv;
    table << "n\tcores\tpairs";
    csv << "n,cores,pairs";
    if (compare) {
        table << "\tseries_cores\tseries_pairs\tmatch";
        csv << ",series_cores,series_pairs,match";
    }
    table << "\n";
    csv << "\n";
    for (int n = 0; n <= max_n; ++n) {
        std::int64_t c = cores.values[static_cast<std::size_t>(n)];
        std::int64_t p = pairs[static_cast<std::size_t>(n)];
        table << n << "\t" << c << "\t" << p;
        csv << n << "," << c << "," << p;
        nlohmann::ordered_json row{{"n", n}, {"cores", c}, {"pairs", p}};
        if (compare) {
            const Rational& sc = core_series.coeff(n);
            const Rational& sp = pair_series.coeff(n);
            bool match = sc == c && sp == p;
            all_match = all_match && match;
            table << "\t" << to_string(sc) << "\t" << to_string(sp) << "\t"
                  << (match ? "yes" : "NO");
            csv << "," << to_string(sc) << "," << to_string(sp) << "," << (match ? "yes" : "no");
            row["series_cores"] = to_string(sc);
            row["series_pairs"] = to_string(sp);
            row["match"] = match;
        }
        table << "\n";
        csv << "\n";
        rows.push_back(std::move(row));
    }
    switch (format) {
        case OutputFormat::Table:
            std::cout << table.str();
            break;
        case OutputFormat::Csv:
            std::cout << csv.str();
            break;
        case OutputFormat::Json: {
            nlohmann::ordered_json doc;
            doc["schema"] = "qseries.oracle/1";
            doc["t"] = t;
            doc["max"] = max_n;
            doc["compare"] = compare;
            doc["rows"] = std::move(rows);
            if (compare) doc["all_match"] = all_match;
            std::cout << doc.dump(2) << "\n";
            break;
        }
    }
    return all_match ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series engine and identity verifier for 4-core partition pairs"};
    app.require_subcommand(1);

    std::string format_name = "table";
    std::string catalog_path;
    std::int64_t budget = -1;
    bool timings = false;

    auto add_common = [&](CLI::App* sub, bool with_catalog) {
        sub->add_option("--format", format_name, "output format: table, json or csv")
            ->default_val("table");
        sub->add_option("--budget", budget, "max coefficients per series (env QSERIES_BUDGET)");
        if (with_catalog)
            sub->add_option("--catalog", catalog_path, "catalog file (env QSERIES_CATALOG)");
    };

    // expand
    auto* expand_cmd = app.add_subcommand("expand", "expand an expression to a coefficient list");
    std::string expr_text;
    std::int64_t order = kDefaultOrder;
    expand_cmd->add_option("expr", expr_text, "expression in the q-series grammar")->required();
    expand_cmd->add_option("--order", order, "exclusive exponent bound")->default_val(16);
    add_common(expand_cmd, false);

    // dissect
    auto* dissect_cmd =
        app.add_subcommand("dissect", "extract an arithmetic progression of coefficients");
    std::int64_t mod = 3, res = 0;
    dissect_cmd->add_option("expr", expr_text, "expression in the q-series grammar")->required();
    dissect_cmd->add_option("--mod", mod, "progression modulus t")->required();
    dissect_cmd->add_option("--res", res, "progression residue r (0 <= r < t)")->required();
    dissect_cmd->add_option("--order", order, "exclusive exponent bound of the result")
        ->default_val(16);
    add_common(dissect_cmd, false);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check catalog identities exactly");
    bool verify_all = false;
    std::vector<std::string> verify_ids;
    std::int64_t verify_order = 0;
    int jobs = 1;
    verify_cmd->add_flag("--all", verify_all, "run every catalog identity plus built-ins");
    verify_cmd->add_option("--id", verify_ids, "identity id (repeatable)");
    verify_cmd->add_option("--order", verify_order,
                           "override each record's window top (default: record value)");
    verify_cmd->add_option("--jobs", jobs, "worker threads")->default_val(1);
    verify_cmd->add_flag("--timings", timings, "include wall-clock timings (non-reproducible)");
    add_common(verify_cmd, true);

    // family
    auto* family_cmd =
        app.add_subcommand("family", "run a parameterized theorem family or congruence scan");
    std::string family_name;
    std::int64_t k_max = -1, n_max = -1;
    family_cmd
        ->add_option("name", family_name, "thm1.1, thm1.2, thm4.1, cong3.2, cong3.7 or cong1.3")
        ->required();
    family_cmd->add_option("--kmax", k_max, "largest family parameter k");
    family_cmd->add_option("--nmax", n_max, "largest n (thm families) / scan depth override");
    family_cmd->add_flag("--timings", timings, "include wall-clock timings (non-reproducible)");
    add_common(family_cmd, true);

    // oracle
    auto* oracle_cmd =
        app.add_subcommand("oracle", "combinatorial hook-number counts, optionally vs the series");
    int t = 4, max_n = 10;
    bool compare = false;
    oracle_cmd->add_option("--t", t, "core size t >= 2")->required();
    oracle_cmd->add_option("--max", max_n, "largest n to count")->default_val(10);
    oracle_cmd->add_flag("--compare", compare, "also expand the generating functions and compare");
    add_common(oracle_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (budget < 0) budget = env_budget();
        OutputFormat format = parse_output_format(format_name);
        std::string cat =
            catalog_path.empty() ? default_catalog_path().string() : catalog_path;
        if (expand_cmd->parsed()) return cmd_expand(expr_text, order, budget, format);
        if (dissect_cmd->parsed()) return cmd_dissect(expr_text, mod, res, order, budget, format);
        if (verify_cmd->parsed())
            return cmd_verify(cat, verify_all, verify_ids, verify_order, budget, jobs, format,
                              timings);
        if (family_cmd->parsed()) {
            if (family_name.substr(0, 3) == "thm" && n_max < 0)
                throw DomainError("--nmax is required for theorem families");
            return cmd_family(cat, family_name, k_max, n_max, budget, format, timings);
        }
        if (oracle_cmd->parsed()) return cmd_oracle(t, max_n, compare, budget, format);
        return kExitUsage;
    } catch (const BudgetError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitPrecision;
    } catch (const PrecisionError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    }
}
