// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "csite/channel.hpp"
#include "csite/csi.hpp"

namespace csite {

struct BurstSpec {
    int count = 0;
    double period_s = 0.0;
};

enum class TxpowerMode : std::uint8_t {
    SWEEP = 0, // cycles through txpower_sweep, one step per burst
    FIXED = 1, // first entry of txpower_sweep for every attack frame
};

// Full description of one test scenario. The dynamics constants per scenario
// id live in scenario_defaults(); they are calibration parameters of the
// synthetic channel, and every report carries the ones it ran with.
struct ScenarioConfig {
    char scenario_id = 'A';
    double duration_s = 300.0;

    // channel dynamics
    double legit_doppler_hz = 0.0;
    double attacker_doppler_hz = 0.0;
    double legit_fading_std = 0.05;
    double attacker_fading_std = 0.05;
    double meas_noise_std = 0.0;
    double crowd_noise_mult = 1.0; // scales legit measurement noise (crowd flow)
    double mean_gain_scale = 1.0;
    double shadow_std_db = 2.0;
    // NIC estimator granularity: reported CSI is piecewise-constant over this
    // interval, so back-to-back frames in one hold report identical values
    // (matching quantized hardware estimates at high SNR).
    double csi_hold_s = 0.3;

    // traffic schedule
    double ping_rate_hz = 400.0; // native encrypted DATA rate
    BurstSpec probe_burst{20, 0.3};
    BurstSpec attack_burst{64, 0.5};
    double probe_spacing_s = 0.0013;
    double attack_spacing_s = 0.001;
    // Probe bursts fire mid-cycle, shortly after a ping slot, so the reply
    // burst rides on a freshly updated window.
    double probe_offset_s = 0.1513;
    // Association-time calibration preamble: an encrypted probe exchange that
    // fills the window across several channel holds and fixes sigma_ref.
    double preamble_s = 1.0;
    double preamble_rate_hz = 50.0;

    double legit_txpower_dbm = 15.0;
    TxpowerMode attack_txpower = TxpowerMode::SWEEP;
    std::vector<int> txpower_sweep = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    bool include_attack = true;

    int n_tx = 1;
    int n_rx = 3;
    int n_sub = 30;
    std::uint64_t seed = 1;

    void validate() const;
};

// Dynamics mapping for the seven scenarios A..G.
ScenarioConfig scenario_defaults(char scenario_id, std::uint64_t seed);

struct Trace {
    std::vector<Frame> frames;
    ScenarioConfig config;
};

// Streaming frame generator: merges the preamble, ping, probe and attack
// schedules in time order, stepping each link's channel lazily. With
// f_s > 0, encrypted DATA frames are thinned to f_s on the fly; the dropped
// frames still advance the channel and consume their random draws, so the
// emitted frames match decimate(run_scenario(cfg), f_s) exactly.
class ScenarioRun {
public:
    // f_s = 0 keeps the native rate.
    ScenarioRun(const ScenarioConfig& cfg, double f_s);

    bool next(Frame& out);

    enum class Step { END, DROPPED, EMITTED };

    // Generates exactly one scheduled frame. DROPPED means the frame was
    // thinned out by the f_s filter (its channel and random state still
    // advanced); out is filled only on EMITTED.
    Step step_one(Frame& out);

    // Time of the next frame that would be generated (dropped ones included);
    // +inf when exhausted.
    double next_time() const;

    // Samples an extra legitimate frame at time t (used by the assurance
    // harness to inject precursors and MFs into the same channel).
    // t must not precede the last legitimate sample.
    Frame sample_legit_at(double t, FrameType type, bool encrypted);

    const ScenarioConfig& config() const { return cfg_; }

private:
    enum Stream { PREAMBLE = 0, PING = 1, PROBE = 2, ATTACK = 3, NSTREAMS = 4 };

    double stream_time(int s) const;
    Frame make_frame(int stream, double t);
    void advance_hold(ChannelState& ch, long long& hold, double t, Rng& rng) const;

    ScenarioConfig cfg_;
    double f_s_;
    Rng legit_fading_rng_, att_fading_rng_;
    Rng legit_noise_rng_, att_noise_rng_;
    Rng legit_shadow_rng_, att_shadow_rng_;
    ChannelState legit_ch_, att_ch_;
    long long legit_hold_ = 0, att_hold_ = 0;
    long long idx_[NSTREAMS] = {0, 0, 0, 0};
    long long n_preamble_ = 0;
    std::uint32_t legit_seq_ = 0, att_seq_ = 0;
    long long last_kept_bucket_ = -1;
};

// Materializes the full labeled trace at native rate.
Trace run_scenario(const ScenarioConfig& cfg);

// Uniformly thins encrypted DATA frames to rate f_s; management and attack
// frames are untouched and ordering is preserved.
Trace decimate(const Trace& trace, double f_s);

} // namespace csite
