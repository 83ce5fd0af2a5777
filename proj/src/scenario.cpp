// SPDX-License-Identifier: Apache-2.0
#include "csite/scenario.hpp"

#include <cmath>
#include <limits>

namespace csite {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Doppler for pedestrian speeds at the 2.412 GHz carrier: f_D = v / lambda_c.
constexpr double kWalkSlowHz = 4.02;   // 0.5 m/s
constexpr double kWalkNormalHz = 9.65; // 1.2 m/s
constexpr double kWalkFastHz = 20.1;   // 2.5 m/s
// Residual dynamics of a "stationary" indoor link; real channels never
// freeze completely.
constexpr double kAmbientHz = 0.3;

} // namespace

void ScenarioConfig::validate() const {
    if (scenario_id < 'A' || scenario_id > 'G') {
        throw InvalidConfig("scenario_id must be in A..G");
    }
    if (duration_s <= 0.0) {
        throw InvalidConfig("duration must be > 0");
    }
    if (ping_rate_hz <= 0.0 || preamble_rate_hz <= 0.0) {
        throw InvalidConfig("rates must be > 0");
    }
    if (csi_hold_s <= 0.0) {
        throw InvalidConfig("csi_hold_s must be > 0");
    }
    if (probe_burst.count > 0 && (probe_burst.period_s <= 0.0 || probe_spacing_s <= 0.0)) {
        throw InvalidConfig("probe schedule needs positive period and spacing");
    }
    if (include_attack && attack_burst.count > 0 &&
        (attack_burst.period_s <= 0.0 || attack_spacing_s <= 0.0)) {
        throw InvalidConfig("attack schedule needs positive period and spacing");
    }
    if (txpower_sweep.empty()) {
        throw InvalidConfig("txpower_sweep must be nonempty");
    }
    if (n_tx < 1 || n_rx < 1 || n_sub < 1) {
        throw InvalidConfig("antenna/subcarrier counts must be >= 1");
    }
    if ((n_tx * n_rx * n_sub) % 2 != 0) {
        // Adjacent-pair merging needs an even amplitude count; padding would
        // invent data, so odd configurations are rejected outright.
        throw InvalidConfig("n_tx*n_rx*n_sub must be even for pair merging");
    }
    if (legit_doppler_hz < 0 || attacker_doppler_hz < 0 || meas_noise_std < 0 ||
        legit_fading_std < 0 || attacker_fading_std < 0 || crowd_noise_mult < 0) {
        throw InvalidConfig("channel parameters must be >= 0");
    }
}

ScenarioConfig scenario_defaults(char scenario_id, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.scenario_id = scenario_id;
    cfg.seed = seed;
    switch (scenario_id) {
    case 'A': // both stationary, controlled environment
        cfg.legit_doppler_hz = kAmbientHz;
        cfg.attacker_doppler_hz = kAmbientHz;
        cfg.legit_fading_std = 0.05;
        cfg.attacker_fading_std = 0.05;
        break;
    case 'B': // stationary with crowd flow: triple the ambient dynamics
        cfg.legit_doppler_hz = 3.0 * kAmbientHz;
        cfg.attacker_doppler_hz = kAmbientHz;
        cfg.legit_fading_std = 0.05;
        cfg.attacker_fading_std = 0.05;
        cfg.crowd_noise_mult = 3.0;
        break;
    case 'C': // client stationary, attacker moving
        cfg.legit_doppler_hz = kAmbientHz;
        cfg.attacker_doppler_hz = kWalkNormalHz;
        cfg.legit_fading_std = 0.05;
        cfg.attacker_fading_std = 0.30;
        break;
    case 'D': // client moving at normal speed
        cfg.legit_doppler_hz = kWalkNormalHz;
        cfg.attacker_doppler_hz = kAmbientHz;
        cfg.legit_fading_std = 0.30;
        cfg.attacker_fading_std = 0.05;
        break;
    case 'E': // client moving slowly
        cfg.legit_doppler_hz = kWalkSlowHz;
        cfg.attacker_doppler_hz = kAmbientHz;
        cfg.legit_fading_std = 0.30;
        cfg.attacker_fading_std = 0.05;
        break;
    case 'F': // client moving fast
        cfg.legit_doppler_hz = kWalkFastHz;
        cfg.attacker_doppler_hz = kAmbientHz;
        cfg.legit_fading_std = 0.30;
        cfg.attacker_fading_std = 0.05;
        break;
    case 'G': // both moving at normal speed
        cfg.legit_doppler_hz = kWalkNormalHz;
        cfg.attacker_doppler_hz = kWalkNormalHz;
        cfg.legit_fading_std = 0.30;
        cfg.attacker_fading_std = 0.30;
        break;
    default:
        throw InvalidConfig(std::string("unknown scenario id '") + scenario_id + "'");
    }
    return cfg;
}

ScenarioRun::ScenarioRun(const ScenarioConfig& cfg, double f_s)
    : cfg_(cfg),
      f_s_(f_s),
      legit_fading_rng_(Rng::substream(cfg.seed, 1)),
      att_fading_rng_(Rng::substream(cfg.seed, 3)),
      legit_noise_rng_(Rng::substream(cfg.seed, 4)),
      att_noise_rng_(Rng::substream(cfg.seed, 5)),
      legit_shadow_rng_(Rng::substream(cfg.seed, 6)),
      att_shadow_rng_(Rng::substream(cfg.seed, 7)) {
    cfg_.validate();
    if (f_s_ < 0.0 || f_s_ > cfg_.ping_rate_hz * (1.0 + 1e-9)) {
        throw RateTooHigh("f_s " + std::to_string(f_s_) + " exceeds native rate " +
                          std::to_string(cfg_.ping_rate_hz));
    }
    Rng legit_init = Rng::substream(cfg.seed, 0);
    Rng att_init = Rng::substream(cfg.seed, 2);
    legit_ch_ = init_channel(cfg_.n_tx, cfg_.n_rx, cfg_.n_sub, cfg_.legit_doppler_hz,
                             cfg_.legit_fading_std,
                             cfg_.meas_noise_std * cfg_.crowd_noise_mult,
                             cfg_.mean_gain_scale, cfg_.shadow_std_db, legit_init);
    att_ch_ = init_channel(cfg_.n_tx, cfg_.n_rx, cfg_.n_sub, cfg_.attacker_doppler_hz,
                           cfg_.attacker_fading_std, cfg_.meas_noise_std,
                           cfg_.mean_gain_scale, cfg_.shadow_std_db, att_init);
    n_preamble_ = std::llround(cfg_.preamble_s * cfg_.preamble_rate_hz);
}

double ScenarioRun::stream_time(int s) const {
    switch (s) {
    case PREAMBLE: {
        if (idx_[PREAMBLE] >= n_preamble_) return kInf;
        return (idx_[PREAMBLE] + 0.5) / cfg_.preamble_rate_hz;
    }
    case PING: {
        const double t = idx_[PING] / cfg_.ping_rate_hz;
        return t < cfg_.duration_s ? t : kInf;
    }
    case PROBE: {
        if (cfg_.probe_burst.count <= 0) return kInf;
        const long long j = idx_[PROBE] / cfg_.probe_burst.count;
        const long long s_in = idx_[PROBE] % cfg_.probe_burst.count;
        const double base = j * cfg_.probe_burst.period_s;
        if (base >= cfg_.duration_s) return kInf;
        return base + cfg_.probe_offset_s + s_in * cfg_.probe_spacing_s;
    }
    case ATTACK: {
        if (!cfg_.include_attack || cfg_.attack_burst.count <= 0) return kInf;
        const long long m = idx_[ATTACK] / cfg_.attack_burst.count;
        const long long s_in = idx_[ATTACK] % cfg_.attack_burst.count;
        const double base = m * cfg_.attack_burst.period_s;
        if (base >= cfg_.duration_s) return kInf;
        return base + 0.0004 + s_in * cfg_.attack_spacing_s;
    }
    default: return kInf;
    }
}

// Advances the link's fading state hold by hold up to the hold containing t.
// One AR step per hold keeps the evolution a function of absolute time alone,
// so thinning frames never changes the channel the survivors see.
void ScenarioRun::advance_hold(ChannelState& ch, long long& hold, double t,
                               Rng& rng) const {
    const long long target =
        static_cast<long long>(std::floor(t / cfg_.csi_hold_s + 1e-9));
    while (hold < target) {
        step_channel(ch, cfg_.csi_hold_s, rng);
        ++hold;
    }
}

Frame ScenarioRun::make_frame(int stream, double t) {
    Frame f;
    f.arrival_time = t;
    if (stream == ATTACK) {
        advance_hold(att_ch_, att_hold_, t, att_fading_rng_);
        const long long m = idx_[ATTACK] / cfg_.attack_burst.count;
        int txp = cfg_.txpower_sweep.front();
        if (cfg_.attack_txpower == TxpowerMode::SWEEP) {
            txp = cfg_.txpower_sweep[m % cfg_.txpower_sweep.size()];
        }
        f.frame_type = FrameType::DEAUTH;
        f.encrypted = false;
        f.seq = att_seq_++;
        f.txpower_dbm = txp;
        f.source_truth = SourceTruth::ATTACKER;
        f.csi = sample_csi(att_ch_, att_noise_rng_);
        f.rss_dbm = rss_of(att_ch_, f.txpower_dbm, att_shadow_rng_);
        return f;
    }

    advance_hold(legit_ch_, legit_hold_, t, legit_fading_rng_);
    switch (stream) {
    case PREAMBLE:
        f.frame_type = FrameType::ICMP_ECHO;
        f.encrypted = true;
        break;
    case PING:
        f.frame_type = FrameType::DATA;
        f.encrypted = true;
        break;
    case PROBE:
        f.frame_type = FrameType::PROBE_RESPONSE;
        f.encrypted = false;
        break;
    }
    f.seq = legit_seq_++;
    f.txpower_dbm = cfg_.legit_txpower_dbm;
    f.source_truth = SourceTruth::LEGIT;
    f.csi = sample_csi(legit_ch_, legit_noise_rng_);
    f.rss_dbm = rss_of(legit_ch_, f.txpower_dbm, legit_shadow_rng_);
    return f;
}

double ScenarioRun::next_time() const {
    double best = kInf;
    for (int s = 0; s < NSTREAMS; ++s) best = std::min(best, stream_time(s));
    return best;
}

ScenarioRun::Step ScenarioRun::step_one(Frame& out) {
    int best = -1;
    double best_t = kInf;
    for (int s = 0; s < NSTREAMS; ++s) {
        const double t = stream_time(s);
        if (t < best_t) {
            best_t = t;
            best = s;
        }
    }
    if (best < 0) return Step::END;

    Frame f = make_frame(best, best_t);
    ++idx_[best];

    if (best == PING && f_s_ > 0.0) {
        const long long bucket =
            static_cast<long long>(std::floor(best_t * f_s_ + 1e-9));
        if (bucket == last_kept_bucket_) {
            return Step::DROPPED; // channel and rng already advanced
        }
        last_kept_bucket_ = bucket;
    }
    out = std::move(f);
    return Step::EMITTED;
}

bool ScenarioRun::next(Frame& out) {
    for (;;) {
        switch (step_one(out)) {
        case Step::END: return false;
        case Step::DROPPED: continue;
        case Step::EMITTED: return true;
        }
    }
}

Frame ScenarioRun::sample_legit_at(double t, FrameType type, bool encrypted) {
    const long long target =
        static_cast<long long>(std::floor(t / cfg_.csi_hold_s + 1e-9));
    if (target < legit_hold_) {
        throw InvalidConfig("sample_legit_at: time runs backwards");
    }
    advance_hold(legit_ch_, legit_hold_, t, legit_fading_rng_);
    Frame f;
    f.arrival_time = t;
    f.frame_type = type;
    f.encrypted = encrypted;
    f.seq = legit_seq_++;
    f.txpower_dbm = cfg_.legit_txpower_dbm;
    f.source_truth = SourceTruth::LEGIT;
    f.csi = sample_csi(legit_ch_, legit_noise_rng_);
    f.rss_dbm = rss_of(legit_ch_, f.txpower_dbm, legit_shadow_rng_);
    return f;
}

Trace run_scenario(const ScenarioConfig& cfg) {
    ScenarioRun run(cfg, 0.0);
    Trace trace;
    trace.config = cfg;
    const double est = cfg.duration_s * (cfg.ping_rate_hz + 80.0) +
                       cfg.preamble_s * cfg.preamble_rate_hz;
    trace.frames.reserve(static_cast<std::size_t>(est));
    Frame f;
    while (run.next(f)) {
        trace.frames.push_back(std::move(f));
    }
    return trace;
}

Trace decimate(const Trace& trace, double f_s) {
    if (f_s <= 0.0) {
        throw InvalidConfig("decimate: f_s must be > 0");
    }
    if (f_s > trace.config.ping_rate_hz * (1.0 + 1e-9)) {
        throw RateTooHigh("decimate: f_s " + std::to_string(f_s) +
                          " exceeds native rate " +
                          std::to_string(trace.config.ping_rate_hz));
    }
    Trace out;
    out.config = trace.config;
    out.frames.reserve(trace.frames.size());
    long long last_bucket = -1;
    for (const Frame& f : trace.frames) {
        if (f.frame_type == FrameType::DATA && f.encrypted) {
            const long long bucket =
                static_cast<long long>(std::floor(f.arrival_time * f_s + 1e-9));
            if (bucket == last_bucket) continue;
            last_bucket = bucket;
        }
        out.frames.push_back(f);
    }
    return out;
}

} // namespace csite
