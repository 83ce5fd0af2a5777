// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "csite/assurance.hpp"
#include "csite/rng.hpp"

using namespace csite;

TEST_CASE("precursor lengths follow the doubling rule with a window cap") {
    CreConfig cfg; // l1 = 4, l_w_peer = 45
    CHECK(precursor_length(1, cfg) == 4);
    CHECK(precursor_length(2, cfg) == 20);
    CHECK(precursor_length(3, cfg) == 40);
    CHECK(precursor_length(4, cfg) == 45); // 80 capped
    CHECK(precursor_length(5, cfg) == 45);
    SUBCASE("nondecreasing and constant once capped") {
        int prev = 0;
        for (int j = 1; j <= 10; ++j) {
            const int l = precursor_length(j, cfg);
            CHECK(l >= prev);
            CHECK(l <= cfg.l_w_peer);
            prev = l;
        }
    }
}

TEST_CASE("nack encoding") {
    CHECK(encode_nack("PROBE_REQUEST", 42316) == "PROBE_REQUEST@42316");
    CHECK(encode_nack("DEAUTH", 0) == "DEAUTH@0");
    CHECK_THROWS_AS(encode_nack("", 1), InvalidToken);
    CHECK_THROWS_AS(encode_nack("A@B", 1), InvalidToken);
}

TEST_CASE("nack decoding") {
    const NackMessage m = decode_nack("PROBE_REQUEST@42316");
    CHECK(m.frame_type_name == "PROBE_REQUEST");
    CHECK(m.seq == 42316);
    CHECK_THROWS_AS(decode_nack("X@@1"), MalformedPayload);
    CHECK_THROWS_AS(decode_nack("A@99999999999999999999"), MalformedPayload);
    CHECK_THROWS_AS(decode_nack("NOSEP"), MalformedPayload);
    CHECK_THROWS_AS(decode_nack("@5"), MalformedPayload);
    CHECK_THROWS_AS(decode_nack("A@"), MalformedPayload);
    CHECK_THROWS_AS(decode_nack("A@01"), MalformedPayload);
    CHECK_THROWS_AS(decode_nack("A@1x"), MalformedPayload);
}

TEST_CASE("encode/decode round-trips on fuzzed valid messages") {
    Rng rng(101);
    const std::string alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789abcdefghijklmnopqrstuvwxyz-.:";
    for (int trial = 0; trial < 500; ++trial) {
        std::string token;
        const int len = 1 + int(rng.next_u64() % 24);
        for (int i = 0; i < len; ++i) {
            token += alphabet[rng.next_u64() % alphabet.size()];
        }
        const std::uint64_t seq = rng.next_u64() >> (rng.next_u64() % 40);
        const NackMessage back = decode_nack(encode_nack(token, seq));
        CHECK(back.frame_type_name == token);
        CHECK(back.seq == seq);
    }
}

TEST_CASE("sender state machine") {
    CreConfig cfg;
    const NackMessage mf{"PROBE_RESPONSE", 7};

    SUBCASE("submit emits l1 precursors then the MF at 2 ms spacing") {
        CreSender s(cfg);
        const auto res = s.step(SenderEvent::SUBMIT_MF, mf);
        REQUIRE(res.schedule.size() == 5);
        for (int i = 0; i < 4; ++i) {
            CHECK(res.schedule[i].kind == FrameType::DATA);
            CHECK(res.schedule[i].encrypted);
            CHECK(res.schedule[i].offset_s == doctest::Approx(0.002 * i));
        }
        CHECK(res.schedule[4].kind == FrameType::PROBE_RESPONSE);
        CHECK(!res.schedule[4].encrypted);
        CHECK(res.schedule[4].offset_s == doctest::Approx(0.006 + cfg.mf_gap_s));
        CHECK(s.phase() == SenderPhase::AWAITING_OUTCOME);
        CHECK(s.attempt() == 1);
    }
    SUBCASE("successive nacks escalate the burst per the doubling rule") {
        CreSender s(cfg);
        s.step(SenderEvent::SUBMIT_MF, mf);
        auto res = s.step(SenderEvent::NACK_RECEIVED, mf);
        CHECK(res.schedule.size() == 21); // 20 precursors + MF
        res = s.step(SenderEvent::NACK_RECEIVED, mf);
        CHECK(res.schedule.size() == 41); // 40 precursors + MF
    }
    SUBCASE("exhaustion after max_attempts nacks") {
        CreSender s(cfg);
        s.step(SenderEvent::SUBMIT_MF, mf);
        for (int i = 0; i < cfg.max_attempts - 1; ++i) {
            const auto res = s.step(SenderEvent::NACK_RECEIVED, mf);
            CHECK(!res.schedule.empty());
        }
        const auto last = s.step(SenderEvent::NACK_RECEIVED, mf);
        CHECK(last.schedule.empty());
        CHECK(s.phase() == SenderPhase::EXHAUSTED);
    }
    SUBCASE("total emission is bounded by the escalation sum") {
        CreSender s(cfg);
        long long frames = 0;
        frames += long(s.step(SenderEvent::SUBMIT_MF, mf).schedule.size());
        while (s.phase() == SenderPhase::AWAITING_OUTCOME) {
            frames += long(s.step(SenderEvent::NACK_RECEIVED, mf).schedule.size());
        }
        long long bound = 0;
        for (int j = 1; j <= cfg.max_attempts; ++j) {
            bound += precursor_length(j, cfg) + 1;
        }
        CHECK(frames <= bound);
    }
    SUBCASE("clean timeout completes the delivery") {
        CreSender s(cfg);
        s.step(SenderEvent::SUBMIT_MF, mf);
        const auto res = s.step(SenderEvent::ACK_TIMEOUT_CLEAN);
        CHECK(res.delivered);
        CHECK(s.phase() == SenderPhase::IDLE);
        CHECK(!s.pending_mf().has_value());
    }
    SUBCASE("protocol violations") {
        CreSender s(cfg);
        CHECK_THROWS_AS(s.step(SenderEvent::ACK_TIMEOUT_CLEAN), ProtocolViolation);
        s.step(SenderEvent::SUBMIT_MF, mf);
        CHECK_THROWS_AS(s.step(SenderEvent::SUBMIT_MF, mf), ProtocolViolation);
    }
    SUBCASE("foreign nack raises the spoof alarm without retransmission") {
        CreSender s(cfg);
        s.step(SenderEvent::SUBMIT_MF, mf);
        const auto res = s.step(SenderEvent::NACK_RECEIVED,
                                NackMessage{"PROBE_RESPONSE", 999});
        CHECK(res.spoof_alarm);
        CHECK(res.schedule.empty());
        CHECK(s.attempt() == 1);
        CHECK(s.phase() == SenderPhase::AWAITING_OUTCOME);
        // also from idle: an N-ACK for a frame that was never pending
        CreSender idle(cfg);
        const auto res2 = idle.step(SenderEvent::NACK_RECEIVED, mf);
        CHECK(res2.spoof_alarm);
    }
    SUBCASE("give-up timer abandons the delivery") {
        CreSender s(cfg);
        s.step(SenderEvent::SUBMIT_MF, mf);
        s.step(SenderEvent::GIVE_UP_TIMER);
        CHECK(s.phase() == SenderPhase::EXHAUSTED);
    }
}

TEST_CASE("receiver emits an nack only for rejected management frames") {
    Frame f;
    f.frame_type = FrameType::DEAUTH;
    f.seq = 7;
    const auto nack = receiver_on_verdict(f, Verdict::SUSPICIOUS);
    REQUIRE(nack.has_value());
    CHECK(encode_nack(nack->frame_type_name, nack->seq) == "DEAUTH@7");

    Frame ok;
    ok.frame_type = FrameType::PROBE_RESPONSE;
    CHECK(!receiver_on_verdict(ok, Verdict::TRUSTED).has_value());
}
