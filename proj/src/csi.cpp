// SPDX-License-Identifier: Apache-2.0
#include "csite/csi.hpp"

#include <cmath>

namespace csite {

const char* frame_type_name(FrameType t) {
    switch (t) {
    case FrameType::DATA: return "DATA";
    case FrameType::PROBE_REQUEST: return "PROBE_REQUEST";
    case FrameType::PROBE_RESPONSE: return "PROBE_RESPONSE";
    case FrameType::DEAUTH: return "DEAUTH";
    case FrameType::ICMP_ECHO: return "ICMP_ECHO";
    }
    return "UNKNOWN";
}

bool frame_type_from_name(const std::string& name, FrameType& out) {
    for (FrameType t : {FrameType::DATA, FrameType::PROBE_REQUEST,
                        FrameType::PROBE_RESPONSE, FrameType::DEAUTH,
                        FrameType::ICMP_ECHO}) {
        if (name == frame_type_name(t)) {
            out = t;
            return true;
        }
    }
    return false;
}

AmplitudeVector amplitudes(const CsiMatrix& csi) {
    AmplitudeVector amps;
    amps.reserve(csi.entries.size());
    for (const auto& h : csi.entries) {
        amps.push_back(std::abs(h));
    }
    return amps;
}

ReducedPoint reduce(const AmplitudeVector& amps, double arrival_time) {
    if (amps.size() % 2 != 0) {
        throw OddLength("reduce: amplitude vector length " +
                        std::to_string(amps.size()) + " is odd");
    }
    ReducedPoint p;
    p.arrival_time = arrival_time;
    p.values.reserve(amps.size() / 2);
    for (std::size_t i = 0; i + 1 < amps.size(); i += 2) {
        p.values.push_back(0.5 * (amps[i] + amps[i + 1]));
    }
    return p;
}

double euclidean_dist(const ReducedPoint& a, const ReducedPoint& b) {
    if (a.values.size() != b.values.size()) {
        throw DimensionMismatch("euclidean_dist: " + std::to_string(a.values.size()) +
                                " vs " + std::to_string(b.values.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

} // namespace csite
