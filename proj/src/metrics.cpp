// SPDX-License-Identifier: Apache-2.0
#include "csite/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csite/parallel.hpp"

namespace csite {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReducedPoint extract_point(const Frame& f, DetectorKind kind) {
    if (kind == DetectorKind::CSITE) {
        return reduce(amplitudes(f.csi), f.arrival_time);
    }
    ReducedPoint p;
    p.values = {f.rss_dbm};
    p.arrival_time = f.arrival_time;
    return p;
}

struct Counters {
    long long n_attack = 0;
    long long n_attack_trusted = 0;
    long long n_legit_mf = 0;
    long long n_legit_mf_suspicious = 0;
    long long n_frames = 0;

    void tally(const Frame& f, Verdict v) {
        ++n_frames;
        if (f.source_truth == SourceTruth::ATTACKER &&
            f.frame_type == FrameType::DEAUTH) {
            ++n_attack;
            if (v == Verdict::TRUSTED) ++n_attack_trusted;
        } else if (f.source_truth == SourceTruth::LEGIT &&
                   f.frame_type == FrameType::PROBE_RESPONSE) {
            ++n_legit_mf;
            if (v == Verdict::SUSPICIOUS) ++n_legit_mf_suspicious;
        }
    }

    void fill(DetectionReport& r) const {
        r.n_attack = n_attack;
        r.n_attack_trusted = n_attack_trusted;
        r.n_legit_mf = n_legit_mf;
        r.n_legit_mf_suspicious = n_legit_mf_suspicious;
        r.n_frames = n_frames;
        r.fp_valid = n_attack > 0;
        r.fn_valid = n_legit_mf > 0;
        r.fp_rate = r.fp_valid ? double(n_attack_trusted) / double(n_attack) : kNaN;
        r.fn_rate = r.fn_valid ? double(n_legit_mf_suspicious) / double(n_legit_mf) : kNaN;
    }
};

std::size_t reduced_dim(const ScenarioConfig& sc, DetectorKind kind) {
    if (kind == DetectorKind::RSS_BASELINE) return 1;
    return static_cast<std::size_t>(sc.n_tx * sc.n_rx * sc.n_sub) / 2;
}

} // namespace

const char* detector_kind_name(DetectorKind k) {
    return k == DetectorKind::CSITE ? "CSITE" : "RSS_BASELINE";
}

DetectionReport evaluate(const Trace& trace, const DetectorConfig& cfg,
                         DetectorKind kind) {
    if (trace.frames.empty()) {
        throw EmptyTrace("evaluate: trace has no frames");
    }
    DetectionReport r;
    r.scenario_id = trace.config.scenario_id;
    r.f_s = 0.0;
    r.kind = kind;
    r.detector_config = cfg;
    r.scenario_config = trace.config;
    r.seed = trace.config.seed;

    Detector det(cfg, reduced_dim(trace.config, kind));
    det.set_logging(false);
    Counters c;
    std::uint64_t id = 0;
    for (const Frame& f : trace.frames) {
        const Verdict v = det.classify(extract_point(f, kind), f.encrypted, id++);
        c.tally(f, v);
    }
    c.fill(r);
    return r;
}

DetectionReport evaluate_scenario(const ScenarioConfig& sc, double f_s,
                                  const DetectorConfig& cfg, DetectorKind kind) {
    DetectionReport r;
    r.scenario_id = sc.scenario_id;
    r.f_s = f_s;
    r.kind = kind;
    r.detector_config = cfg;
    r.scenario_config = sc;
    r.seed = sc.seed;

    ScenarioRun run(sc, f_s);
    Detector det(cfg, reduced_dim(sc, kind));
    det.set_logging(false);
    Counters c;
    Frame f;
    std::uint64_t id = 0;
    while (run.next(f)) {
        const Verdict v = det.classify(extract_point(f, kind), f.encrypted, id++);
        c.tally(f, v);
    }
    if (c.n_frames == 0) {
        throw EmptyTrace("evaluate_scenario: no frames generated");
    }
    c.fill(r);
    return r;
}

namespace {

void validate_axis(const SweepRequest& req) {
    if (req.values.empty()) {
        throw InvalidAxisValue("sweep: no axis values");
    }
    if (req.scenarios.empty() || req.seeds.empty()) {
        throw InvalidAxisValue("sweep: need at least one scenario and seed");
    }
    for (double v : req.values) {
        switch (req.axis) {
        case SweepAxis::FS:
            if (v <= 0.0) throw InvalidAxisValue("sweep: f_s must be > 0");
            break;
        case SweepAxis::K:
            if (v < 1 || v != std::floor(v) || static_cast<int>(v) >= req.base_detector.l_w) {
                throw InvalidAxisValue("sweep: need integer 1 <= k < l_w");
            }
            break;
        case SweepAxis::LW:
            if (v != std::floor(v) || static_cast<int>(v) <= req.base_detector.k) {
                throw InvalidAxisValue("sweep: need integer l_w > k");
            }
            break;
        case SweepAxis::DTS:
            if (v != 0.0 && v != 1.0) throw InvalidAxisValue("sweep: DTS values are 0 or 1");
            break;
        case SweepAxis::LPRE:
            if (v < 0 || v != std::floor(v) || static_cast<int>(v) > req.base_detector.l_w) {
                throw InvalidAxisValue("sweep: need integer 0 <= l_pre <= l_w");
            }
            break;
        }
    }
}

} // namespace

SweepResult sweep(const SweepRequest& req) {
    validate_axis(req);
    SweepResult result;

    struct Cell {
        double value;
        char scenario;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    cells.reserve(req.values.size() * req.scenarios.size() * req.seeds.size());
    for (double v : req.values)
        for (char sc : req.scenarios)
            for (std::uint64_t seed : req.seeds) cells.push_back({v, sc, seed});

    if (req.axis == SweepAxis::LPRE) {
        result.cre.resize(cells.size());
        parallel_for(cells.size(), [&](std::size_t i) {
            const Cell& cell = cells[i];
            ScenarioConfig sc = scenario_defaults(cell.scenario, cell.seed);
            sc.duration_s = req.duration_s;
            result.cre[i] = evaluate_cre(sc, req.base_detector, req.base_cre, req.f_s,
                                         static_cast<int>(cell.value), {cell.seed});
        });
        return result;
    }

    result.detection.resize(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        const Cell& cell = cells[i];
        ScenarioConfig sc = scenario_defaults(cell.scenario, cell.seed);
        sc.duration_s = req.duration_s;
        DetectorConfig det = req.base_detector;
        double f_s = req.f_s;
        switch (req.axis) {
        case SweepAxis::FS: f_s = cell.value; break;
        case SweepAxis::K: det.k = static_cast<int>(cell.value); break;
        case SweepAxis::LW: det.l_w = static_cast<int>(cell.value); break;
        case SweepAxis::DTS: det.dts_enabled = cell.value != 0.0; break;
        case SweepAxis::LPRE: break;
        }
        result.detection[i] = evaluate_scenario(sc, f_s, det, DetectorKind::CSITE);
    });
    return result;
}

namespace {

struct CreRunCounts {
    long long submitted = 0;
    long long one_shot = 0;
    long long exhausted = 0;
    std::vector<long long> hist;
};

CreRunCounts run_cre_once(const ScenarioConfig& base, const DetectorConfig& det_cfg,
                          const CreConfig& cre_cfg, double f_s, int l_pre,
                          std::uint64_t seed) {
    ScenarioConfig sc = base;
    sc.seed = seed;
    sc.probe_burst.count = 0; // MFs come from the assurance sender instead
    sc.include_attack = false;
    sc.validate();

    CreConfig cre = cre_cfg;
    cre.l1 = l_pre;
    cre.l_w_peer = det_cfg.l_w;
    cre.validate();

    CreRunCounts out;
    out.hist.assign(cre.max_attempts, 0);

    ScenarioRun run(sc, f_s);
    Detector det(det_cfg, reduced_dim(sc, DetectorKind::CSITE));
    det.set_logging(false);
    CreSender sender(cre);

    std::uint64_t frame_id = 0;
    Frame bg;
    // One schedule event at a time so the generator's channel clock never
    // runs ahead of an injected frame.
    auto drain_background_until = [&](double t) {
        while (run.next_time() <= t) {
            if (run.step_one(bg) == ScenarioRun::Step::EMITTED) {
                det.classify(extract_point(bg, DetectorKind::CSITE), bg.encrypted,
                             frame_id++);
            }
        }
    };

    const double f_s_eff = f_s > 0.0 ? f_s : sc.ping_rate_hz;
    double t_sub = sc.preamble_s + std::max(2.0, 1.2 * det_cfg.l_w / f_s_eff);
    const double period = 0.3;
    std::uint64_t mf_seq = 1;

    while (t_sub < sc.duration_s - 1.0) {
        const NackMessage mf_id{frame_type_name(FrameType::PROBE_RESPONSE), mf_seq};
        SenderStepResult step = sender.step(SenderEvent::SUBMIT_MF, mf_id);
        ++out.submitted;

        double burst_start = t_sub;
        double chain_end = t_sub;
        int attempt = 1;
        for (;;) {
            Frame m_frame;
            Verdict m_verdict = Verdict::SUSPICIOUS;
            for (const ScheduledFrame& sf : step.schedule) {
                const double t_f = burst_start + sf.offset_s;
                drain_background_until(t_f);
                Frame fr = run.sample_legit_at(t_f, sf.kind, sf.encrypted);
                if (!sf.encrypted) {
                    fr.seq = static_cast<std::uint32_t>(mf_seq);
                    m_frame = fr;
                    m_verdict = det.classify(extract_point(fr, DetectorKind::CSITE),
                                             fr.encrypted, frame_id++);
                } else {
                    det.classify(extract_point(fr, DetectorKind::CSITE), fr.encrypted,
                                 frame_id++);
                }
            }
            const double t_m = burst_start + step.schedule.back().offset_s;

            if (m_verdict == Verdict::TRUSTED) {
                // No N-ACK arrives; the clean timeout closes the delivery.
                chain_end = t_m + cre.nack_wait_s();
                drain_background_until(chain_end);
                sender.step(SenderEvent::ACK_TIMEOUT_CLEAN);
                out.hist[attempt - 1] += 1;
                if (attempt == 1) ++out.one_shot;
                break;
            }

            const auto nack = receiver_on_verdict(m_frame, m_verdict);
            const NackMessage decoded = decode_nack(
                encode_nack(nack->frame_type_name, nack->seq));
            const double t_nack = t_m + cre.rtt_s;
            drain_background_until(t_nack);
            step = sender.step(SenderEvent::NACK_RECEIVED, decoded);
            if (sender.phase() == SenderPhase::EXHAUSTED) {
                ++out.exhausted;
                chain_end = t_nack;
                // Reset for the next submission.
                break;
            }
            ++attempt;
            burst_start = t_nack + cre.precursor_gap_s;
        }

        ++mf_seq;
        t_sub = std::max(t_sub + period, chain_end + 0.01);
    }
    return out;
}

} // namespace

CreReport evaluate_cre(const ScenarioConfig& sc, const DetectorConfig& det_cfg,
                       const CreConfig& cre_cfg, double f_s, int l_pre,
                       const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) {
        throw InvalidConfig("evaluate_cre: need at least one seed");
    }
    if (l_pre < 0 || l_pre > det_cfg.l_w) {
        throw InvalidConfig("evaluate_cre: need 0 <= l_pre <= l_w");
    }
    det_cfg.validate();

    std::vector<CreRunCounts> runs(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        runs[i] = run_cre_once(sc, det_cfg, cre_cfg, f_s, l_pre, seeds[i]);
    });

    CreReport r;
    r.scenario_id = sc.scenario_id;
    r.f_s = f_s;
    r.l_pre = l_pre;
    r.detector_config = det_cfg;
    r.cre_config = cre_cfg;
    r.scenario_config = sc;
    r.seed = seeds.front();
    r.attempts_histogram.assign(cre_cfg.max_attempts, 0);
    for (const auto& run : runs) {
        r.n_submitted += run.submitted;
        r.n_one_shot += run.one_shot;
        r.n_exhausted += run.exhausted;
        for (std::size_t j = 0; j < run.hist.size(); ++j) {
            r.attempts_histogram[j] += run.hist[j];
        }
    }
    r.one_shot_valid = r.n_submitted > 0;
    r.one_shot_rate =
        r.one_shot_valid ? double(r.n_one_shot) / double(r.n_submitted) : kNaN;
    return r;
}

} // namespace csite
