#pragma once

#include <string>

#include "morreylab/lab.hpp"

namespace morreylab {

enum class ReportFormat { Csv, Json };

ReportFormat report_format_from_string(const std::string& name);

/// One header line plus one row per instance; fields quoted as needed.
std::string report_to_csv(const ExperimentReport& report);
/// Full report including provenance and flags.
std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

void write_report(const ExperimentReport& report, const std::string& path, ReportFormat format);
ExperimentReport read_report_json(const std::string& path);

}  // namespace morreylab
