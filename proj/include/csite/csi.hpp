// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "csite/errors.hpp"

namespace csite {

// Raw channel state report for one received frame: one complex gain per
// (tx antenna, rx antenna, subcarrier), stored row-major in exactly that
// order, i.e. entry index = (tx * n_rx + rx) * n_sub + sc.
struct CsiMatrix {
    int n_tx = 1;
    int n_rx = 3;
    int n_sub = 30;
    std::vector<std::complex<double>> entries;

    int dim() const { return n_tx * n_rx * n_sub; }

    bool well_formed() const {
        return n_tx > 0 && n_rx > 0 && n_sub > 0 &&
               entries.size() == static_cast<std::size_t>(dim());
    }
};

// Per-entry linear amplitudes, same ordering as the CsiMatrix they came from.
using AmplitudeVector = std::vector<double>;

// Detector feature point: adjacent-pair-merged amplitudes plus arrival time.
struct ReducedPoint {
    std::vector<double> values;
    double arrival_time = 0.0; // seconds

    std::size_t dim() const { return values.size(); }
};

enum class FrameType : std::uint8_t {
    DATA = 0,
    PROBE_REQUEST = 1,
    PROBE_RESPONSE = 2,
    DEAUTH = 3,
    ICMP_ECHO = 4,
};

const char* frame_type_name(FrameType t);

// Inverse of frame_type_name; returns false for unknown names.
bool frame_type_from_name(const std::string& name, FrameType& out);

// Whether the type is an (unencrypted) management frame.
inline bool is_management(FrameType t) {
    return t == FrameType::PROBE_REQUEST || t == FrameType::PROBE_RESPONSE ||
           t == FrameType::DEAUTH;
}

enum class SourceTruth : std::uint8_t {
    LEGIT = 0,
    ATTACKER = 1,
};

// One received MAC-layer frame as seen by the station under test.
// source_truth is simulator ground truth used only for scoring; the
// detector never reads it.
struct Frame {
    double arrival_time = 0.0;   // seconds
    FrameType frame_type = FrameType::DATA;
    bool encrypted = false;      // attr_en
    std::uint32_t seq = 0;
    double txpower_dbm = 0.0;
    SourceTruth source_truth = SourceTruth::LEGIT;
    CsiMatrix csi;
    double rss_dbm = 0.0;
};

// |entry| for every CSI entry, in matrix order.
AmplitudeVector amplitudes(const CsiMatrix& csi);

// Merges every two adjacent amplitudes to their mean. Length must be even;
// odd totals are rejected when the run is configured, so hitting OddLength
// here means a config check was bypassed.
ReducedPoint reduce(const AmplitudeVector& amps, double arrival_time);

double euclidean_dist(const ReducedPoint& a, const ReducedPoint& b);

} // namespace csite
