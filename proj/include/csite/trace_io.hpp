// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "csite/scenario.hpp"

namespace csite {

// Binary trace format, little-endian:
//   magic "CSITRACE", u32 version, u32 n_tx, u32 n_rx, u32 n_sub,
//   u64 seed, scenario snapshot, u64 frame count,
// then per frame:
//   f64 timestamp, u8 frame_type, u8 encrypted, u32 seq, f64 txpower_dbm,
//   u8 source_truth, f64 rss_dbm, 2 * n_tx*n_rx*n_sub f64 (re, im).
// All doubles are written raw, so read(write(t)) is bit-exact.
void write_trace(const Trace& trace, const std::string& path);
Trace read_trace(const std::string& path);

} // namespace csite
