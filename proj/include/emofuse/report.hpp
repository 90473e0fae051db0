#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "emofuse/evaluation.hpp"

namespace emofuse {

enum class ReportFormat { json, csv, markdown };

// Accepts json, csv, md, markdown; throws UnsupportedFormat.
ReportFormat parse_report_format(std::string_view name);

// All reals are printed with six decimals; json keys are sorted.
std::string render_report(const EvaluationReport& report, ReportFormat format);

// Inverse of the json rendering (values carry the six-decimal rounding).
EvaluationReport report_from_json(std::string_view json_text);

// JSON text with sorted keys where every floating-point number is printed
// with exactly six decimals. Integers print as integers.
std::string dump_fixed(const nlohmann::json& value, int indent = 2);

}  // namespace emofuse
