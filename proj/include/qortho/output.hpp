#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qortho/suites.hpp"

namespace qortho {

enum class OutputFormat { Json, Csv, Text };

// wall_time_ms is written only when given, so untimed reports are reproducible byte for byte
std::string format_results(const std::string& suite, const RunConfig& cfg,
                           const std::vector<SuiteResult>& results, OutputFormat format,
                           std::optional<double> wall_time_ms = std::nullopt);

std::string format_double(double x);

}  // namespace qortho
