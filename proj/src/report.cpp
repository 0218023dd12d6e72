#include "qseries/report.hpp"

#include <sstream>

#include "json.hpp"

#include "qseries/errors.hpp"

namespace qseries {

OutputFormat parse_output_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw DomainError("unknown output format '" + name + "' (expected table, json or csv)");
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::InsufficientPrecision: return "insufficient-precision";
    }
    return "?";
}

std::string render_report_table(const VerificationReport& report, bool with_timings) {
    std::ostringstream out;
    for (const auto& item : report.items) {
        out << (item.status == CheckStatus::Pass ? "PASS" : item.status == CheckStatus::Fail
                                                                ? "FAIL"
                                                                : "PREC")
            << "  " << item.id << "  window [" << item.lo << ", " << item.hi << ")";
        if (with_timings) {
            out << "  " << static_cast<long long>(item.wall_ms * 1000) << "us";
        }
        out << "\n";
        if (item.witness_exp)
            out << "      witness q^" << *item.witness_exp << ": lhs " << item.lhs_coeff
                << " vs rhs " << item.rhs_coeff << "\n";
        if (!item.message.empty()) out << "      " << item.message << "\n";
        for (const auto& note : item.info) out << "      note: " << note << "\n";
    }
    out << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail)
        << " failed, " << report.count(CheckStatus::InsufficientPrecision)
        << " insufficient precision\n";
    return out.str();
}

std::string render_report_json(const VerificationReport& report, bool with_timings) {
    nlohmann::ordered_json doc;
    doc["schema"] = "qseries.report/1";
    doc["items"] = nlohmann::ordered_json::array();
    for (const auto& item : report.items) {
        nlohmann::ordered_json j;
        j["id"] = item.id;
        j["status"] = status_name(item.status);
        j["window"] = {item.lo, item.hi};
        if (item.witness_exp) {
            j["witness"] = {{"exponent", *item.witness_exp},
                            {"lhs", item.lhs_coeff},
                            {"rhs", item.rhs_coeff}};
        } else {
            j["witness"] = nullptr;
        }
        if (!item.message.empty()) j["message"] = item.message;
        if (!item.info.empty()) j["info"] = item.info;
        if (with_timings) j["wall_ms"] = static_cast<std::int64_t>(item.wall_ms * 1000) / 1000.0;
        doc["items"].push_back(std::move(j));
    }
    doc["passed"] = report.count(CheckStatus::Pass);
    doc["failed"] = report.count(CheckStatus::Fail);
    doc["insufficient_precision"] = report.count(CheckStatus::InsufficientPrecision);
    return doc.dump(2) + "\n";
}

std::string render_report_csv(const VerificationReport& report, bool with_timings) {
    std::ostringstream out;
    out << "id,status,lo,hi,witness_exponent,lhs,rhs";
    if (with_timings) out << ",wall_us";
    out << "\n";
    for (const auto& item : report.items) {
        out << item.id << "," << status_name(item.status) << "," << item.lo << "," << item.hi
            << ",";
        if (item.witness_exp)
            out << *item.witness_exp << "," << item.lhs_coeff << "," << item.rhs_coeff;
        else
            out << ",,";
        if (with_timings) out << "," << static_cast<long long>(item.wall_ms * 1000);
        out << "\n";
    }
    return out.str();
}

std::string render_report(const VerificationReport& report, OutputFormat format,
                          bool with_timings) {
    switch (format) {
        case OutputFormat::Table: return render_report_table(report, with_timings);
        case OutputFormat::Json: return render_report_json(report, with_timings);
        case OutputFormat::Csv: return render_report_csv(report, with_timings);
    }
    return "";
}

} // namespace qseries
