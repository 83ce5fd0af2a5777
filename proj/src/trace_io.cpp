// SPDX-License-Identifier: Apache-2.0
#include "csite/trace_io.hpp"

#include <cstring>
#include <fstream>
#include <limits>

namespace csite {

namespace {

constexpr char kMagic[8] = {'C', 'S', 'I', 'T', 'R', 'A', 'C', 'E'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open for writing: " + path);
    }
    template <typename T>
    void put(T v) {
        static_assert(std::is_trivially_copyable_v<T>);
        out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }
    void put_bytes(const char* p, std::size_t n) { out_.write(p, n); }
    void finish(const std::string& path) {
        out_.flush();
        if (!out_) throw IoError("write failed: " + path);
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open for reading: " + path);
    }
    template <typename T>
    T get() {
        static_assert(std::is_trivially_copyable_v<T>);
        T v;
        in_.read(reinterpret_cast<char*>(&v), sizeof(T));
        if (!in_) throw CorruptHeader("truncated trace file");
        return v;
    }
    void get_bytes(char* p, std::size_t n) {
        in_.read(p, n);
        if (!in_) throw CorruptHeader("truncated trace file");
    }
    bool at_end() {
        in_.peek();
        return in_.eof();
    }

private:
    std::ifstream in_;
};

void put_scenario(Writer& w, const ScenarioConfig& sc) {
    w.put<std::uint8_t>(static_cast<std::uint8_t>(sc.scenario_id));
    w.put<double>(sc.duration_s);
    w.put<double>(sc.legit_doppler_hz);
    w.put<double>(sc.attacker_doppler_hz);
    w.put<double>(sc.legit_fading_std);
    w.put<double>(sc.attacker_fading_std);
    w.put<double>(sc.meas_noise_std);
    w.put<double>(sc.crowd_noise_mult);
    w.put<double>(sc.mean_gain_scale);
    w.put<double>(sc.shadow_std_db);
    w.put<double>(sc.ping_rate_hz);
    w.put<std::int32_t>(sc.probe_burst.count);
    w.put<double>(sc.probe_burst.period_s);
    w.put<std::int32_t>(sc.attack_burst.count);
    w.put<double>(sc.attack_burst.period_s);
    w.put<double>(sc.probe_spacing_s);
    w.put<double>(sc.attack_spacing_s);
    w.put<double>(sc.probe_offset_s);
    w.put<double>(sc.preamble_s);
    w.put<double>(sc.preamble_rate_hz);
    w.put<double>(sc.legit_txpower_dbm);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(sc.attack_txpower));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(sc.txpower_sweep.size()));
    for (int p : sc.txpower_sweep) w.put<std::int32_t>(p);
    w.put<std::uint8_t>(sc.include_attack ? 1 : 0);
}

ScenarioConfig get_scenario(Reader& r, int n_tx, int n_rx, int n_sub,
                            std::uint64_t seed) {
    ScenarioConfig sc;
    sc.n_tx = n_tx;
    sc.n_rx = n_rx;
    sc.n_sub = n_sub;
    sc.seed = seed;
    sc.scenario_id = static_cast<char>(r.get<std::uint8_t>());
    sc.duration_s = r.get<double>();
    sc.legit_doppler_hz = r.get<double>();
    sc.attacker_doppler_hz = r.get<double>();
    sc.legit_fading_std = r.get<double>();
    sc.attacker_fading_std = r.get<double>();
    sc.meas_noise_std = r.get<double>();
    sc.crowd_noise_mult = r.get<double>();
    sc.mean_gain_scale = r.get<double>();
    sc.shadow_std_db = r.get<double>();
    sc.ping_rate_hz = r.get<double>();
    sc.probe_burst.count = r.get<std::int32_t>();
    sc.probe_burst.period_s = r.get<double>();
    sc.attack_burst.count = r.get<std::int32_t>();
    sc.attack_burst.period_s = r.get<double>();
    sc.probe_spacing_s = r.get<double>();
    sc.attack_spacing_s = r.get<double>();
    sc.probe_offset_s = r.get<double>();
    sc.preamble_s = r.get<double>();
    sc.preamble_rate_hz = r.get<double>();
    sc.legit_txpower_dbm = r.get<double>();
    sc.attack_txpower = static_cast<TxpowerMode>(r.get<std::uint8_t>());
    const std::uint32_t n_sweep = r.get<std::uint32_t>();
    if (n_sweep > 4096) throw CorruptHeader("implausible txpower sweep length");
    sc.txpower_sweep.clear();
    for (std::uint32_t i = 0; i < n_sweep; ++i) {
        sc.txpower_sweep.push_back(r.get<std::int32_t>());
    }
    sc.include_attack = r.get<std::uint8_t>() != 0;
    return sc;
}

} // namespace

void write_trace(const Trace& trace, const std::string& path) {
    Writer w(path);
    w.put_bytes(kMagic, sizeof(kMagic));
    w.put<std::uint32_t>(kVersion);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(trace.config.n_tx));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(trace.config.n_rx));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(trace.config.n_sub));
    w.put<std::uint64_t>(trace.config.seed);
    put_scenario(w, trace.config);
    w.put<std::uint64_t>(trace.frames.size());

    const int dim = trace.config.n_tx * trace.config.n_rx * trace.config.n_sub;
    for (const Frame& f : trace.frames) {
        if (f.csi.dim() != dim || !f.csi.well_formed()) {
            throw DimensionMismatch("write_trace: frame CSI does not match header");
        }
        w.put<double>(f.arrival_time);
        w.put<std::uint8_t>(static_cast<std::uint8_t>(f.frame_type));
        w.put<std::uint8_t>(f.encrypted ? 1 : 0);
        w.put<std::uint32_t>(f.seq);
        w.put<double>(f.txpower_dbm);
        w.put<std::uint8_t>(static_cast<std::uint8_t>(f.source_truth));
        w.put<double>(f.rss_dbm);
        for (const auto& h : f.csi.entries) {
            w.put<double>(h.real());
            w.put<double>(h.imag());
        }
    }
    w.finish(path);
}

Trace read_trace(const std::string& path) {
    Reader r(path);
    char magic[8];
    r.get_bytes(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw CorruptHeader("bad magic, not a trace file: " + path);
    }
    const std::uint32_t version = r.get<std::uint32_t>();
    if (version != kVersion) {
        throw CorruptHeader("unsupported trace version " + std::to_string(version));
    }
    const int n_tx = static_cast<int>(r.get<std::uint32_t>());
    const int n_rx = static_cast<int>(r.get<std::uint32_t>());
    const int n_sub = static_cast<int>(r.get<std::uint32_t>());
    if (n_tx < 1 || n_tx > 8 || n_rx < 1 || n_rx > 8 || n_sub < 1 || n_sub > 512) {
        throw CorruptHeader("implausible antenna/subcarrier header");
    }
    const std::uint64_t seed = r.get<std::uint64_t>();

    Trace trace;
    trace.config = get_scenario(r, n_tx, n_rx, n_sub, seed);
    const std::uint64_t count = r.get<std::uint64_t>();

    const int dim = n_tx * n_rx * n_sub;
    trace.frames.reserve(count);
    double prev_t = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < count; ++i) {
        Frame f;
        f.arrival_time = r.get<double>();
        f.frame_type = static_cast<FrameType>(r.get<std::uint8_t>());
        f.encrypted = r.get<std::uint8_t>() != 0;
        f.seq = r.get<std::uint32_t>();
        f.txpower_dbm = r.get<double>();
        f.source_truth = static_cast<SourceTruth>(r.get<std::uint8_t>());
        f.rss_dbm = r.get<double>();
        f.csi.n_tx = n_tx;
        f.csi.n_rx = n_rx;
        f.csi.n_sub = n_sub;
        f.csi.entries.reserve(dim);
        for (int e = 0; e < dim; ++e) {
            const double re = r.get<double>();
            const double im = r.get<double>();
            f.csi.entries.emplace_back(re, im);
        }
        if (f.arrival_time < prev_t) {
            throw CorruptHeader("timestamps not nondecreasing");
        }
        prev_t = f.arrival_time;
        trace.frames.push_back(std::move(f));
    }
    if (!r.at_end()) {
        throw CorruptHeader("trailing bytes after last frame");
    }
    return trace;
}

} // namespace csite
