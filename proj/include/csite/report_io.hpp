// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "csite/metrics.hpp"

namespace csite {

extern const char* const kToolVersion;

// Structured (JSON) report documents. Serialization is lossless for doubles
// and key order is fixed, so identical reports produce identical bytes.
std::string detection_reports_to_json(const std::vector<DetectionReport>& reports);
std::string cre_reports_to_json(const std::vector<CreReport>& reports);
std::vector<DetectionReport> detection_reports_from_json(const std::string& text);

// CSV summaries: one row per report, stable documented column order.
std::string detection_reports_to_csv(const std::vector<DetectionReport>& reports);
std::string cre_reports_to_csv(const std::vector<CreReport>& reports);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace csite
