// SPDX-License-Identifier: Apache-2.0
#include "csite/assurance.hpp"

#include <algorithm>
#include <cmath>

namespace csite {

void CreConfig::validate() const {
    if (l1 < 0) throw InvalidConfig("cre: l1 must be >= 0");
    if (max_attempts < 1) throw InvalidConfig("cre: max_attempts must be >= 1");
    if (precursor_gap_s <= 0.0) throw InvalidConfig("cre: precursor_gap must be > 0");
    if (mf_gap_s <= 0.0) throw InvalidConfig("cre: mf_gap must be > 0");
    if (l_w_peer < 1) throw InvalidConfig("cre: l_w_peer must be >= 1");
}

int precursor_length(int j, const CreConfig& cfg) {
    if (j < 1) throw InvalidConfig("precursor_length: attempt index starts at 1");
    if (j == 1) return cfg.l1;
    const double raw = std::ldexp(double(cfg.l1 + 1), j); // 2^j (l1+1)
    return static_cast<int>(std::min<double>(raw, cfg.l_w_peer));
}

std::string encode_nack(const std::string& frame_type_name, std::uint64_t seq) {
    if (frame_type_name.empty()) {
        throw InvalidToken("encode_nack: empty frame type token");
    }
    for (unsigned char c : frame_type_name) {
        if (c >= 0x80) throw InvalidToken("encode_nack: token must be ASCII");
        if (c == '@') throw InvalidToken("encode_nack: token must not contain '@'");
    }
    return frame_type_name + "@" + std::to_string(seq);
}

NackMessage decode_nack(const std::string& payload) {
    const std::size_t at = payload.find('@');
    if (at == std::string::npos) {
        throw MalformedPayload("decode_nack: missing '@'");
    }
    if (payload.find('@', at + 1) != std::string::npos) {
        throw MalformedPayload("decode_nack: more than one '@'");
    }
    if (at == 0) {
        throw MalformedPayload("decode_nack: empty frame type token");
    }
    for (std::size_t i = 0; i < at; ++i) {
        if (static_cast<unsigned char>(payload[i]) >= 0x80) {
            throw MalformedPayload("decode_nack: token must be ASCII");
        }
    }
    const std::string digits = payload.substr(at + 1);
    if (digits.empty()) {
        throw MalformedPayload("decode_nack: missing sequence number");
    }
    if (digits.size() > 1 && digits[0] == '0') {
        throw MalformedPayload("decode_nack: leading zeros");
    }
    std::uint64_t seq = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw MalformedPayload("decode_nack: non-decimal sequence number");
        }
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (seq > (UINT64_MAX - digit) / 10) {
            throw MalformedPayload("decode_nack: sequence number overflow");
        }
        seq = seq * 10 + digit;
    }
    return NackMessage{payload.substr(0, at), seq};
}

CreSender::CreSender(const CreConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

std::vector<ScheduledFrame> CreSender::burst_schedule(int length) const {
    FrameType mf_kind = FrameType::PROBE_RESPONSE;
    if (pending_) {
        frame_type_from_name(pending_->frame_type_name, mf_kind);
    }
    std::vector<ScheduledFrame> out;
    out.reserve(length + 1);
    double t = 0.0;
    for (int i = 0; i < length; ++i) {
        out.push_back({t, FrameType::DATA, true});
        t += cfg_.precursor_gap_s;
    }
    const double mf_at =
        length > 0 ? (length - 1) * cfg_.precursor_gap_s + cfg_.mf_gap_s : 0.0;
    out.push_back({mf_at, mf_kind, false});
    return out;
}

SenderStepResult CreSender::step(SenderEvent event,
                                 const std::optional<NackMessage>& payload) {
    SenderStepResult res;
    switch (event) {
    case SenderEvent::SUBMIT_MF: {
        // A new submission is legal from IDLE or after giving up on the
        // previous MF, never while one is in flight.
        if (phase_ == SenderPhase::AWAITING_OUTCOME ||
            phase_ == SenderPhase::SENDING_PRECURSORS) {
            throw ProtocolViolation("SUBMIT_MF while a delivery is pending");
        }
        if (!payload) {
            throw ProtocolViolation("SUBMIT_MF needs the MF identity");
        }
        pending_ = payload;
        attempt_j_ = 1;
        phase_ = SenderPhase::AWAITING_OUTCOME;
        res.schedule = burst_schedule(precursor_length(1, cfg_));
        return res;
    }
    case SenderEvent::NACK_RECEIVED: {
        if (!payload) {
            throw ProtocolViolation("NACK_RECEIVED needs the N-ACK message");
        }
        if (phase_ != SenderPhase::AWAITING_OUTCOME || !pending_ ||
            !(*payload == *pending_)) {
            // An N-ACK for a frame we never sent: someone is forging our MFs.
            res.spoof_alarm = true;
            return res;
        }
        attempt_j_ += 1;
        if (attempt_j_ > cfg_.max_attempts) {
            phase_ = SenderPhase::EXHAUSTED;
            return res;
        }
        res.schedule = burst_schedule(precursor_length(attempt_j_, cfg_));
        return res;
    }
    case SenderEvent::ACK_TIMEOUT_CLEAN: {
        if (phase_ != SenderPhase::AWAITING_OUTCOME) {
            throw ProtocolViolation("ACK_TIMEOUT_CLEAN without a pending delivery");
        }
        phase_ = SenderPhase::IDLE;
        pending_.reset();
        attempt_j_ = 0;
        res.delivered = true;
        return res;
    }
    case SenderEvent::GIVE_UP_TIMER: {
        if (phase_ != SenderPhase::AWAITING_OUTCOME) {
            throw ProtocolViolation("GIVE_UP_TIMER without a pending delivery");
        }
        phase_ = SenderPhase::EXHAUSTED;
        return res;
    }
    }
    throw ProtocolViolation("unknown sender event");
}

std::optional<NackMessage> receiver_on_verdict(const Frame& frame, Verdict verdict) {
    if (verdict != Verdict::SUSPICIOUS) {
        return std::nullopt;
    }
    return NackMessage{frame_type_name(frame.frame_type), frame.seq};
}

} // namespace csite
