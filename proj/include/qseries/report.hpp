#pragma once

#include <string>

#include "qseries/verify.hpp"

namespace qseries {

enum class OutputFormat { Table, Json, Csv };

OutputFormat parse_output_format(const std::string& name);

const char* status_name(CheckStatus s);

/// Renderers are deterministic: identical reports give byte-identical output.
/// Wall-clock timings are included only when with_timings is set, since they
/// vary run to run.
std::string render_report_table(const VerificationReport& report, bool with_timings);
std::string render_report_json(const VerificationReport& report, bool with_timings);
std::string render_report_csv(const VerificationReport& report, bool with_timings);

std::string render_report(const VerificationReport& report, OutputFormat format,
                          bool with_timings);

} // namespace qseries
