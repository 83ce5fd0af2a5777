// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csite/assurance.hpp"
#include "csite/detector.hpp"
#include "csite/scenario.hpp"

namespace csite {

enum class DetectorKind : std::uint8_t {
    CSITE = 0,        // 45-d reduced CSI amplitude points
    RSS_BASELINE = 1, // same pipeline on 1-d RSS points
};

const char* detector_kind_name(DetectorKind k);

// Per-run error metrics. Degenerate denominators leave the rate NaN and the
// valid flag false; they are never silently reported as zero.
struct DetectionReport {
    char scenario_id = 'A';
    double f_s = 0.0; // 0 = native rate
    DetectorKind kind = DetectorKind::CSITE;
    double fp_rate = 0.0;
    double fn_rate = 0.0;
    bool fp_valid = false;
    bool fn_valid = false;
    long long n_attack = 0;
    long long n_attack_trusted = 0;
    long long n_legit_mf = 0;
    long long n_legit_mf_suspicious = 0;
    long long n_frames = 0;
    DetectorConfig detector_config;
    ScenarioConfig scenario_config;
    std::uint64_t seed = 0;
};

struct CreReport {
    char scenario_id = 'A';
    double f_s = 0.0;
    int l_pre = 0;
    double one_shot_rate = 0.0;
    bool one_shot_valid = false;
    long long n_submitted = 0;
    long long n_one_shot = 0;
    long long n_exhausted = 0;
    // attempts_histogram[j-1] = deliveries that succeeded on attempt j
    std::vector<long long> attempts_histogram;
    DetectorConfig detector_config;
    CreConfig cre_config;
    ScenarioConfig scenario_config;
    std::uint64_t seed = 0;
};

// Replays a materialized trace through a fresh detector of the given kind.
DetectionReport evaluate(const Trace& trace, const DetectorConfig& cfg,
                         DetectorKind kind);

// Streaming equivalent: generates the scenario at native rate, thins DATA to
// f_s on the fly (f_s = 0 keeps native) and classifies frame by frame.
// Produces the same numbers as evaluate(decimate(run_scenario(sc), f_s), ...).
DetectionReport evaluate_scenario(const ScenarioConfig& sc, double f_s,
                                  const DetectorConfig& cfg, DetectorKind kind);

enum class SweepAxis : std::uint8_t { FS = 0, K = 1, LW = 2, DTS = 3, LPRE = 4 };

struct SweepRequest {
    SweepAxis axis = SweepAxis::FS;
    std::vector<double> values;
    DetectorConfig base_detector;
    CreConfig base_cre;
    std::vector<char> scenarios;
    std::vector<std::uint64_t> seeds;
    double duration_s = 60.0;
    double f_s = 100.0; // fixed rate for non-FS axes
};

struct SweepResult {
    std::vector<DetectionReport> detection; // FS/K/LW/DTS axes
    std::vector<CreReport> cre;             // LPRE axis
};

// Cartesian product of (value, scenario, seed), evaluated in parallel with
// deterministic report ordering (value-major, then scenario, then seed).
SweepResult sweep(const SweepRequest& req);

// Coupled sender/receiver simulation of the MF transmission assurance
// system: background DATA decimated to f_s, each MF submission preceded by
// exactly l_pre precursors on the first attempt, Eq.-style escalation after
// each N-ACK. Aggregates over the given seeds.
CreReport evaluate_cre(const ScenarioConfig& sc, const DetectorConfig& det_cfg,
                       const CreConfig& cre_cfg, double f_s, int l_pre,
                       const std::vector<std::uint64_t>& seeds);

} // namespace csite
