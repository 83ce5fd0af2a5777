// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace csite {

struct AcceptanceOptions {
    std::uint64_t base_seed = 1;
    // Smoke mode with reduced durations and seed counts; the real gate is
    // the full run.
    bool quick = false;
    // When set, the determinism check writes its report files here.
    std::string report_dir;
};

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string details;
    double seconds = 0.0;
};

struct AcceptanceSummary {
    std::vector<CriterionResult> results;
    bool all_passed = false;
};

// Runs the ten verification criteria, printing one pass/fail line each.
AcceptanceSummary run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

} // namespace csite
