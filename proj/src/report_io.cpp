// SPDX-License-Identifier: Apache-2.0
#include "csite/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace csite {

const char* const kToolVersion = "csite 0.1.0";

namespace {

using nlohmann::json;

// Shortest round-trip representation; keeps CSV floats lossless.
std::string fmt_double(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

json detector_to_json(const DetectorConfig& c) {
    return json{{"k", c.k},
                {"lambda", c.lambda},
                {"l_w", c.l_w},
                {"i0", c.i0},
                {"dts_enabled", c.dts_enabled},
                {"i_min", c.i_min},
                {"i_max", c.i_max},
                {"sigma_ref_floor", c.sigma_ref_floor},
                {"t_im", c.t_im},
                {"bootstrap", c.bootstrap == BootstrapPolicy::STRICT ? "strict" : "permissive"}};
}

DetectorConfig detector_from_json(const json& j) {
    DetectorConfig c;
    c.k = j.at("k").get<int>();
    c.lambda = j.at("lambda").get<double>();
    c.l_w = j.at("l_w").get<int>();
    c.i0 = j.at("i0").get<double>();
    c.dts_enabled = j.at("dts_enabled").get<bool>();
    c.i_min = j.at("i_min").get<double>();
    c.i_max = j.at("i_max").get<double>();
    c.sigma_ref_floor = j.at("sigma_ref_floor").get<double>();
    c.t_im = j.at("t_im").get<double>();
    c.bootstrap = j.at("bootstrap").get<std::string>() == "strict"
                      ? BootstrapPolicy::STRICT
                      : BootstrapPolicy::PERMISSIVE;
    return c;
}

json scenario_to_json(const ScenarioConfig& s) {
    return json{{"scenario_id", std::string(1, s.scenario_id)},
                {"duration_s", s.duration_s},
                {"legit_doppler_hz", s.legit_doppler_hz},
                {"attacker_doppler_hz", s.attacker_doppler_hz},
                {"legit_fading_std", s.legit_fading_std},
                {"attacker_fading_std", s.attacker_fading_std},
                {"meas_noise_std", s.meas_noise_std},
                {"crowd_noise_mult", s.crowd_noise_mult},
                {"mean_gain_scale", s.mean_gain_scale},
                {"shadow_std_db", s.shadow_std_db},
                {"ping_rate_hz", s.ping_rate_hz},
                {"probe_count", s.probe_burst.count},
                {"probe_period_s", s.probe_burst.period_s},
                {"attack_count", s.attack_burst.count},
                {"attack_period_s", s.attack_burst.period_s},
                {"probe_spacing_s", s.probe_spacing_s},
                {"attack_spacing_s", s.attack_spacing_s},
                {"probe_offset_s", s.probe_offset_s},
                {"preamble_s", s.preamble_s},
                {"preamble_rate_hz", s.preamble_rate_hz},
                {"legit_txpower_dbm", s.legit_txpower_dbm},
                {"attack_txpower", s.attack_txpower == TxpowerMode::SWEEP ? "sweep" : "fixed"},
                {"txpower_sweep", s.txpower_sweep},
                {"include_attack", s.include_attack},
                {"n_tx", s.n_tx},
                {"n_rx", s.n_rx},
                {"n_sub", s.n_sub},
                {"seed", s.seed}};
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig s;
    s.scenario_id = j.at("scenario_id").get<std::string>().at(0);
    s.duration_s = j.at("duration_s").get<double>();
    s.legit_doppler_hz = j.at("legit_doppler_hz").get<double>();
    s.attacker_doppler_hz = j.at("attacker_doppler_hz").get<double>();
    s.legit_fading_std = j.at("legit_fading_std").get<double>();
    s.attacker_fading_std = j.at("attacker_fading_std").get<double>();
    s.meas_noise_std = j.at("meas_noise_std").get<double>();
    s.crowd_noise_mult = j.at("crowd_noise_mult").get<double>();
    s.mean_gain_scale = j.at("mean_gain_scale").get<double>();
    s.shadow_std_db = j.at("shadow_std_db").get<double>();
    s.ping_rate_hz = j.at("ping_rate_hz").get<double>();
    s.probe_burst.count = j.at("probe_count").get<int>();
    s.probe_burst.period_s = j.at("probe_period_s").get<double>();
    s.attack_burst.count = j.at("attack_count").get<int>();
    s.attack_burst.period_s = j.at("attack_period_s").get<double>();
    s.probe_spacing_s = j.at("probe_spacing_s").get<double>();
    s.attack_spacing_s = j.at("attack_spacing_s").get<double>();
    s.probe_offset_s = j.at("probe_offset_s").get<double>();
    s.preamble_s = j.at("preamble_s").get<double>();
    s.preamble_rate_hz = j.at("preamble_rate_hz").get<double>();
    s.legit_txpower_dbm = j.at("legit_txpower_dbm").get<double>();
    s.attack_txpower = j.at("attack_txpower").get<std::string>() == "sweep"
                           ? TxpowerMode::SWEEP
                           : TxpowerMode::FIXED;
    s.txpower_sweep = j.at("txpower_sweep").get<std::vector<int>>();
    s.include_attack = j.at("include_attack").get<bool>();
    s.n_tx = j.at("n_tx").get<int>();
    s.n_rx = j.at("n_rx").get<int>();
    s.n_sub = j.at("n_sub").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

json detection_to_json(const DetectionReport& r) {
    json j{{"scenario_id", std::string(1, r.scenario_id)},
           {"f_s", r.f_s},
           {"kind", detector_kind_name(r.kind)},
           {"n_attack", r.n_attack},
           {"n_attack_trusted", r.n_attack_trusted},
           {"n_legit_mf", r.n_legit_mf},
           {"n_legit_mf_suspicious", r.n_legit_mf_suspicious},
           {"n_frames", r.n_frames},
           {"seed", r.seed},
           {"detector", detector_to_json(r.detector_config)},
           {"scenario", scenario_to_json(r.scenario_config)}};
    // NaN dumps as null; the counts always tell the real story.
    j["fp_rate"] = r.fp_valid ? json(r.fp_rate) : json(nullptr);
    j["fn_rate"] = r.fn_valid ? json(r.fn_rate) : json(nullptr);
    return j;
}

DetectionReport detection_from_json(const json& j) {
    DetectionReport r;
    r.scenario_id = j.at("scenario_id").get<std::string>().at(0);
    r.f_s = j.at("f_s").get<double>();
    r.kind = j.at("kind").get<std::string>() == "CSITE" ? DetectorKind::CSITE
                                                        : DetectorKind::RSS_BASELINE;
    r.n_attack = j.at("n_attack").get<long long>();
    r.n_attack_trusted = j.at("n_attack_trusted").get<long long>();
    r.n_legit_mf = j.at("n_legit_mf").get<long long>();
    r.n_legit_mf_suspicious = j.at("n_legit_mf_suspicious").get<long long>();
    r.n_frames = j.at("n_frames").get<long long>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.detector_config = detector_from_json(j.at("detector"));
    r.scenario_config = scenario_from_json(j.at("scenario"));
    r.fp_valid = !j.at("fp_rate").is_null();
    r.fn_valid = !j.at("fn_rate").is_null();
    r.fp_rate = r.fp_valid ? j.at("fp_rate").get<double>()
                           : std::numeric_limits<double>::quiet_NaN();
    r.fn_rate = r.fn_valid ? j.at("fn_rate").get<double>()
                           : std::numeric_limits<double>::quiet_NaN();
    return r;
}

json cre_to_json(const CreReport& r) {
    json j{{"scenario_id", std::string(1, r.scenario_id)},
           {"f_s", r.f_s},
           {"l_pre", r.l_pre},
           {"n_submitted", r.n_submitted},
           {"n_one_shot", r.n_one_shot},
           {"n_exhausted", r.n_exhausted},
           {"attempts_histogram", r.attempts_histogram},
           {"seed", r.seed},
           {"cre", json{{"l1", r.cre_config.l1},
                        {"max_attempts", r.cre_config.max_attempts},
                        {"precursor_gap_s", r.cre_config.precursor_gap_s},
                        {"mf_gap_s", r.cre_config.mf_gap_s},
                        {"l_w_peer", r.cre_config.l_w_peer},
                        {"rtt_s", r.cre_config.rtt_s}}},
           {"detector", detector_to_json(r.detector_config)},
           {"scenario", scenario_to_json(r.scenario_config)}};
    j["one_shot_rate"] = r.one_shot_valid ? json(r.one_shot_rate) : json(nullptr);
    return j;
}

} // namespace

std::string detection_reports_to_json(const std::vector<DetectionReport>& reports) {
    json doc{{"tool_version", kToolVersion}, {"report_type", "detection"}};
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(detection_to_json(r));
    doc["reports"] = arr;
    return doc.dump(2) + "\n";
}

std::string cre_reports_to_json(const std::vector<CreReport>& reports) {
    json doc{{"tool_version", kToolVersion}, {"report_type", "cre"}};
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(cre_to_json(r));
    doc["reports"] = arr;
    return doc.dump(2) + "\n";
}

std::vector<DetectionReport> detection_reports_from_json(const std::string& text) {
    const json doc = json::parse(text);
    std::vector<DetectionReport> out;
    for (const auto& j : doc.at("reports")) {
        out.push_back(detection_from_json(j));
    }
    return out;
}

std::string detection_reports_to_csv(const std::vector<DetectionReport>& reports) {
    std::ostringstream csv;
    csv << "scenario,f_s,kind,seed,fp_rate,fn_rate,n_attack,n_attack_trusted,"
           "n_legit_mf,n_legit_mf_suspicious,n_frames,k,lambda,l_w,i0,dts,"
           "duration_s\n";
    for (const auto& r : reports) {
        csv << r.scenario_id << ',' << fmt_double(r.f_s) << ','
            << detector_kind_name(r.kind) << ',' << r.seed << ','
            << fmt_double(r.fp_rate) << ',' << fmt_double(r.fn_rate) << ','
            << r.n_attack << ',' << r.n_attack_trusted << ',' << r.n_legit_mf << ','
            << r.n_legit_mf_suspicious << ',' << r.n_frames << ','
            << r.detector_config.k << ',' << fmt_double(r.detector_config.lambda)
            << ',' << r.detector_config.l_w << ','
            << fmt_double(r.detector_config.i0) << ','
            << (r.detector_config.dts_enabled ? 1 : 0) << ','
            << fmt_double(r.scenario_config.duration_s) << '\n';
    }
    return csv.str();
}

std::string cre_reports_to_csv(const std::vector<CreReport>& reports) {
    std::ostringstream csv;
    csv << "scenario,f_s,l_pre,seed,one_shot_rate,n_submitted,n_one_shot,"
           "n_exhausted,attempts_histogram\n";
    for (const auto& r : reports) {
        csv << r.scenario_id << ',' << fmt_double(r.f_s) << ',' << r.l_pre << ','
            << r.seed << ',' << fmt_double(r.one_shot_rate) << ',' << r.n_submitted
            << ',' << r.n_one_shot << ',' << r.n_exhausted << ',';
        for (std::size_t i = 0; i < r.attempts_histogram.size(); ++i) {
            if (i) csv << '|';
            csv << r.attempts_histogram[i];
        }
        csv << '\n';
    }
    return csv.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace csite
