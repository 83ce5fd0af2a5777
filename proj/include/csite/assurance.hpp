// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csite/csi.hpp"
#include "csite/detector.hpp"

namespace csite {

struct CreConfig {
    int l1 = 4;                    // initial precursor count
    int max_attempts = 6;
    double precursor_gap_s = 0.002; // minimum transmission interval
    double mf_gap_s = 0.002;        // gap between last precursor and the MF
    int l_w_peer = 45;              // receiver window length assumed by sender
    double rtt_s = 0.002;

    // No N-ACK within this window means the delivery succeeded; positive ACKs
    // carry no information at this layer.
    double nack_wait_s() const { return 2.0 * precursor_gap_s * l_w_peer + 5.0 * rtt_s; }

    void validate() const;
};

// Precursor burst length for attempt j: l1 for the first attempt, then
// 2^j (l1 + 1) capped by the peer's window length.
int precursor_length(int j, const CreConfig& cfg);

struct NackMessage {
    std::string frame_type_name;
    std::uint64_t seq = 0;

    bool operator==(const NackMessage&) const = default;
};

// "TYPE@SEQ" ASCII payload, e.g. "PROBE_REQUEST@42316".
std::string encode_nack(const std::string& frame_type_name, std::uint64_t seq);
NackMessage decode_nack(const std::string& payload);

enum class SenderPhase : std::uint8_t {
    IDLE = 0,
    SENDING_PRECURSORS = 1, // transient: bursts are scheduled atomically
    AWAITING_OUTCOME = 2,
    EXHAUSTED = 3,
};

enum class SenderEvent : std::uint8_t {
    SUBMIT_MF = 0,
    NACK_RECEIVED = 1,
    ACK_TIMEOUT_CLEAN = 2,
    GIVE_UP_TIMER = 3,
};

struct ScheduledFrame {
    double offset_s = 0.0; // relative to burst start
    FrameType kind = FrameType::DATA;
    bool encrypted = true;
};

struct SenderStepResult {
    std::vector<ScheduledFrame> schedule;
    bool delivered = false;   // set by ACK_TIMEOUT_CLEAN
    bool spoof_alarm = false; // N-ACK for an MF this sender never sent
};

// Sender side of the MF transmission assurance system. One pending MF at a
// time; events must arrive serialized. SUBMIT_MF takes the MF identity as
// payload, NACK_RECEIVED the decoded N-ACK; the other events carry none.
class CreSender {
public:
    explicit CreSender(const CreConfig& cfg);

    SenderStepResult step(SenderEvent event,
                          const std::optional<NackMessage>& payload = std::nullopt);

    SenderPhase phase() const { return phase_; }
    int attempt() const { return attempt_j_; }
    const std::optional<NackMessage>& pending_mf() const { return pending_; }

private:
    std::vector<ScheduledFrame> burst_schedule(int length) const;

    CreConfig cfg_;
    SenderPhase phase_ = SenderPhase::IDLE;
    int attempt_j_ = 0;
    std::optional<NackMessage> pending_;
};

// Receiver side: a rejected management frame triggers an N-ACK carried in an
// encrypted ICMP echo; accepted frames stay silent.
std::optional<NackMessage> receiver_on_verdict(const Frame& frame, Verdict verdict);

} // namespace csite
