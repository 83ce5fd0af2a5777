// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "csite/detector.hpp"
#include "csite/rng.hpp"

using namespace csite;

namespace {

ReducedPoint rp(std::vector<double> v, double t) {
    ReducedPoint p;
    p.values = std::move(v);
    p.arrival_time = t;
    return p;
}

// Window of n random d-dimensional points with strictly increasing times.
SlidingWindow random_window(Rng& rng, std::vector<ReducedPoint>& pts, int n, int d,
                            double dt_lo = 0.001, double dt_hi = 0.2) {
    pts.clear();
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
        t += rng.uniform(dt_lo, dt_hi);
        ReducedPoint p;
        p.arrival_time = t;
        for (int j = 0; j < d; ++j) p.values.push_back(rng.gaussian(1.0, 0.3));
        pts.push_back(p);
    }
    SlidingWindow w(n, d);
    for (const auto& p : pts) w.push(p);
    return w;
}

double naive_tgd(const ReducedPoint& a, const ReducedPoint& b, double lambda) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        acc += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
    }
    return std::sqrt(acc) * std::exp(lambda * std::abs(a.arrival_time - b.arrival_time));
}

} // namespace

TEST_CASE("following coefficient") {
    CHECK(following_coefficient(2.0, 2.0, 5.0) == 1.0);
    CHECK(following_coefficient(1.0, 2.0, 0.0) == 1.0);
    CHECK(following_coefficient(1.0, 2.0, 1.0) == doctest::Approx(M_E).epsilon(1e-12));
    CHECK(following_coefficient(2.0, 1.0, 1.0) ==
          following_coefficient(1.0, 2.0, 1.0));
}

TEST_CASE("time-gained distance") {
    CHECK(tgd(rp({1, 1}, 3.0), rp({1, 1}, 3.0), 1.0) == 0.0);
    CHECK(tgd(rp({0, 0}, 1.0), rp({0, 2}, 1.0), 1.0) == doctest::Approx(2.0));
    CHECK(tgd(rp({0, 0}, 0.0), rp({0, 2}, 1.0), 1.0) ==
          doctest::Approx(2.0 * M_E).epsilon(1e-12));
    SUBCASE("tgd dominates euclidean distance for nonnegative lambda") {
        Rng rng(5);
        std::vector<ReducedPoint> pts;
        random_window(rng, pts, 8, 4);
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                CHECK(tgd(pts[i], pts[j], 0.7) >=
                      euclidean_dist(pts[i], pts[j]) - 1e-15);
            }
        }
    }
}

TEST_CASE("knn selects the whole window when k equals its size") {
    Rng rng(9);
    std::vector<ReducedPoint> pts;
    SlidingWindow w = random_window(rng, pts, 6, 3);
    auto idx = knn_tgd(pts[0], w, 6, 1.0);
    std::sort(idx.begin(), idx.end());
    CHECK(idx == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("knn tie rule prefers the newest points") {
    SlidingWindow w(4, 2);
    for (int i = 0; i < 4; ++i) w.push(rp({1.0, 1.0}, 1.0 + i));
    // lambda = 0 makes every tgd identical, so ties decide everything
    const auto idx = knn_tgd(rp({1.0, 1.0}, 10.0), w, 2, 0.0);
    CHECK(idx == std::vector<int>{3, 2});
}

TEST_CASE("knn matches the full-sort brute-force oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ReducedPoint> pts;
        const int n = 10 + int(rng.next_u64() % 36);
        SlidingWindow w = random_window(rng, pts, n, 45);
        ReducedPoint m;
        m.arrival_time = pts.back().arrival_time + 0.01;
        for (int j = 0; j < 45; ++j) m.values.push_back(rng.gaussian(1.0, 0.3));

        const double lambda = trial % 2 ? 1.0 : 0.0;
        struct C {
            double t;
            double arr;
            int i;
        };
        std::vector<C> all;
        for (int i = 0; i < n; ++i) {
            all.push_back({naive_tgd(m, pts[i], lambda), pts[i].arrival_time, i});
        }
        std::sort(all.begin(), all.end(), [](const C& a, const C& b) {
            if (a.t != b.t) return a.t < b.t;
            if (a.arr != b.arr) return a.arr > b.arr;
            return a.i < b.i;
        });
        std::vector<int> want;
        for (int i = 0; i < 5; ++i) want.push_back(all[i].i);
        CHECK(knn_tgd(m, w, 5, lambda) == want);
    }
    SUBCASE("window smaller than k") {
        SlidingWindow w(3, 1);
        w.push(rp({1.0}, 0.1));
        CHECK_THROWS_AS(knn_tgd(rp({1.0}, 0.2), w, 2, 1.0), WindowTooSmall);
    }
}

TEST_CASE("dof basics and oracle") {
    SUBCASE("duplicate of a window point at the same instant has zero dof") {
        SlidingWindow w(3, 2);
        w.push(rp({1, 2}, 1.0));
        w.push(rp({3, 4}, 2.0));
        CHECK(dof(rp({3, 4}, 2.0), w, 1, 1.0) == 0.0);
    }
    SUBCASE("mean of the three smallest tgd values") {
        // 1-d points at a common time; lambda 0 makes tgd equal plain distance
        SlidingWindow w(4, 1);
        w.push(rp({1.0}, 0.001));
        w.push(rp({2.0}, 0.002));
        w.push(rp({3.0}, 0.003));
        w.push(rp({9.0}, 0.004));
        const double d = dof(rp({0.0}, 0.004), w, 3, 0.0);
        CHECK(d == doctest::Approx(2.0).epsilon(1e-12)); // (1+2+3)/3
    }
    SUBCASE("random instances match brute force") {
        Rng rng(33);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<ReducedPoint> pts;
            SlidingWindow w = random_window(rng, pts, 20, 7);
            ReducedPoint m;
            m.arrival_time = pts.back().arrival_time + 0.05;
            for (int j = 0; j < 7; ++j) m.values.push_back(rng.gaussian(1.0, 0.4));
            std::vector<double> tgds;
            for (const auto& p : pts) tgds.push_back(naive_tgd(m, p, 1.0));
            std::sort(tgds.begin(), tgds.end());
            const double want = (tgds[0] + tgds[1] + tgds[2] + tgds[3] + tgds[4]) / 5.0;
            CHECK(dof(m, w, 5, 1.0) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("channel stability") {
    SUBCASE("identical points give zero") {
        SlidingWindow w(5, 3);
        for (int i = 0; i < 5; ++i) w.push(rp({2, 2, 2}, 0.1 * (i + 1)));
        CHECK(channel_stability(w) == 0.0);
    }
    SUBCASE("homogeneous under scaling") {
        Rng rng(17);
        std::vector<ReducedPoint> pts;
        SlidingWindow w = random_window(rng, pts, 10, 5);
        SlidingWindow w2(10, 5);
        const double c = 3.25;
        for (auto p : pts) {
            for (double& v : p.values) v *= c;
            w2.push(p);
        }
        CHECK(channel_stability(w2) ==
              doctest::Approx(c * channel_stability(w)).epsilon(1e-12));
    }
    SUBCASE("matches the two-pass std oracle") {
        Rng rng(23);
        std::vector<ReducedPoint> pts;
        SlidingWindow w = random_window(rng, pts, 45, 45);
        const int m = 44;
        double acc = 0.0;
        for (int d = 0; d < 45; ++d) {
            std::vector<double> diffs;
            for (int j = 0; j < m; ++j) {
                diffs.push_back(std::abs(pts[j].values[d] - pts[j + 1].values[d]));
            }
            double mu = 0.0;
            for (double x : diffs) mu += x;
            mu /= m;
            double var = 0.0;
            for (double x : diffs) var += (x - mu) * (x - mu);
            acc += std::sqrt(var / (m - 1));
        }
        CHECK(channel_stability(w) == doctest::Approx(acc / 45.0).epsilon(1e-9));
    }
    SUBCASE("needs at least three points") {
        SlidingWindow w(5, 1);
        w.push(rp({1.0}, 0.1));
        w.push(rp({1.0}, 0.2));
        CHECK_THROWS_AS(channel_stability(w), WindowTooSmall);
    }
}

TEST_CASE("dynamic percentile") {
    DetectorConfig cfg;
    cfg.dts_enabled = true;
    CHECK(dynamic_percentile(0.02, 0.02, cfg) == doctest::Approx(75.0));
    CHECK(dynamic_percentile(0.04, 0.02, cfg) == doctest::Approx(37.5));
    CHECK(dynamic_percentile(0.0, 0.02, cfg) == doctest::Approx(99.0)); // clamped
    CHECK(dynamic_percentile(1e9, 0.02, cfg) == doctest::Approx(5.0));  // clamped
    cfg.dts_enabled = false;
    CHECK(dynamic_percentile(123.0, 0.02, cfg) == 75.0);
    cfg.dts_enabled = true;
    CHECK_THROWS_AS(dynamic_percentile(0.02, 0.0, cfg), NotCalibrated);
}

TEST_CASE("nearest-rank percentile") {
    CHECK(percentile_nearest_rank({1, 2, 3, 4, 5}, 75.0) == 4.0);
    CHECK(percentile_nearest_rank({5, 1, 3, 2, 4}, 75.0) == 4.0);
    CHECK(percentile_nearest_rank({7, 7, 7}, 10.0) == 7.0);
    CHECK(percentile_nearest_rank({1, 2}, 100.0) == 2.0);
    CHECK(percentile_nearest_rank({1, 2}, 1.0) == 1.0);
}

TEST_CASE("threshold") {
    SUBCASE("constant window yields its common dof for any percentile") {
        // equally spaced identical points: every member dof is 0
        SlidingWindow w(8, 2);
        for (int i = 0; i < 8; ++i) w.push(rp({1.0, 1.0}, 0.1 * (i + 1)));
        for (double i : {5.0, 50.0, 75.0, 99.0}) {
            CHECK(threshold(w, 3, 1.0, i) == 0.0);
        }
    }
    SUBCASE("monotone nondecreasing in the percentile") {
        Rng rng(29);
        std::vector<ReducedPoint> pts;
        SlidingWindow w = random_window(rng, pts, 20, 6);
        double prev = -1.0;
        for (double i : {5.0, 25.0, 50.0, 75.0, 90.0, 99.0}) {
            const double tau = threshold(w, 5, 1.0, i);
            CHECK(tau >= prev);
            prev = tau;
        }
    }
    SUBCASE("needs k+1 points") {
        SlidingWindow w(5, 1);
        for (int i = 0; i < 3; ++i) w.push(rp({1.0}, 0.1 * (i + 1)));
        CHECK_THROWS_AS(threshold(w, 3, 1.0, 75.0), WindowTooSmall);
    }
}

TEST_CASE("sliding window cache and eviction") {
    Rng rng(31);
    std::vector<ReducedPoint> pts;
    double t = 0.0;
    SlidingWindow w(6, 4);
    for (int i = 0; i < 15; ++i) {
        t += 0.05;
        ReducedPoint p;
        p.arrival_time = t;
        for (int j = 0; j < 4; ++j) p.values.push_back(rng.gaussian(0.0, 1.0));
        w.push(p);
        pts.push_back(p);
        CHECK(w.size() == std::min(i + 1, 6));
        // FIFO eviction: buffer holds the most recent points, oldest first
        const int first = std::max(0, i - 5);
        for (int b = 0; b < w.size(); ++b) {
            CHECK(w.point(b).arrival_time == pts[first + b].arrival_time);
        }
        // cache spot check
        for (int a = 0; a < w.size(); ++a) {
            for (int b = 0; b < w.size(); ++b) {
                CHECK(w.cached_dist(a, b) ==
                      doctest::Approx(euclidean_dist(w.point(a), w.point(b)))
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("calibration") {
    DetectorConfig cfg;
    cfg.k = 2;
    cfg.l_w = 6;
    Detector det(cfg, 3);
    Rng rng(37);

    SUBCASE("window must be full") {
        det.classify(rp({1, 1, 1}, 0.1), true, 0);
        CHECK_THROWS_AS(det.calibrate_reference(), WindowNotFull);
    }
    SUBCASE("static window with noise calibrates near the stability oracle") {
        std::vector<ReducedPoint> pts;
        double t = 0.0;
        for (int i = 0; i < 6; ++i) {
            t += 0.01;
            ReducedPoint p;
            p.arrival_time = t;
            for (int j = 0; j < 3; ++j) p.values.push_back(rng.gaussian(1.0, 0.01));
            pts.push_back(p);
            det.classify(p, true, i);
        }
        CHECK(det.calibrated()); // auto-calibrated on first fill
        CHECK(det.sigma_ref() > 0.0);
        SlidingWindow w(6, 3);
        for (const auto& p : pts) w.push(p);
        CHECK(det.sigma_ref() == doctest::Approx(channel_stability(w)).epsilon(1e-12));
    }
    SUBCASE("identical points floor sigma_ref and recalibration overwrites") {
        for (int i = 0; i < 6; ++i) {
            det.classify(rp({1, 1, 1}, 0.01 * (i + 1)), true, i);
        }
        CHECK(det.sigma_ref() == cfg.sigma_ref_floor);
        for (int i = 0; i < 6; ++i) {
            ReducedPoint p;
            p.arrival_time = 1.0 + 0.01 * i;
            for (int j = 0; j < 3; ++j) p.values.push_back(rng.gaussian(1.0, 0.05));
            det.classify(p, true, 10 + i);
        }
        const double second = det.calibrate_reference();
        CHECK(second > cfg.sigma_ref_floor);
        CHECK(det.sigma_ref() == second);
    }
}

TEST_CASE("classification follows the filter algorithm") {
    DetectorConfig cfg;
    cfg.k = 2;
    cfg.l_w = 5;
    cfg.dts_enabled = false;

    SUBCASE("encrypted frames are always trusted and enter the window") {
        Detector det(cfg, 2);
        Rng rng(41);
        for (int i = 0; i < 20; ++i) {
            ReducedPoint p;
            p.arrival_time = 0.1 * (i + 1);
            p.values = {rng.gaussian(0.0, 5.0), rng.gaussian(0.0, 5.0)};
            const int before = det.window().size();
            CHECK(det.classify(p, true, i) == Verdict::TRUSTED);
            CHECK(det.window().size() == std::min(before + 1, cfg.l_w));
        }
    }
    SUBCASE("strict bootstrap rejects management frames until calibrated") {
        Detector det(cfg, 1);
        CHECK(det.classify(rp({1.0}, 0.1), false, 0) == Verdict::SUSPICIOUS);
        CHECK(det.window().size() == 0);
    }
    SUBCASE("permissive bootstrap accepts them instead") {
        DetectorConfig pcfg = cfg;
        pcfg.bootstrap = BootstrapPolicy::PERMISSIVE;
        Detector det(pcfg, 1);
        CHECK(det.classify(rp({1.0}, 0.1), false, 0) == Verdict::TRUSTED);
        CHECK(det.window().size() == 1);
    }
    SUBCASE("duplicate of the newest point is trusted, far point is not") {
        Detector det(cfg, 1);
        for (int i = 0; i < 5; ++i) {
            det.classify(rp({1.0 + 0.001 * i}, 0.1 * (i + 1)), true, i);
        }
        CHECK(det.calibrated());
        const Verdict dup = det.classify(rp({1.004}, 0.5), false, 100);
        CHECK(dup == Verdict::TRUSTED);
        const int size_before = det.window().size();
        const Verdict far = det.classify(rp({9.0}, 0.55), false, 101);
        CHECK(far == Verdict::SUSPICIOUS);
        CHECK(det.window().size() == size_before);
    }
    SUBCASE("independent-channel arrivals are rejected almost surely") {
        // window sigma 0.01, attacker offset 10x sigma or more
        int suspicious = 0;
        const int trials = 1000;
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng(1000 + trial);
            DetectorConfig c45 = cfg;
            c45.k = 5;
            c45.l_w = 45;
            Detector det(c45, 45);
            double t = 0.0;
            for (int i = 0; i < 45; ++i) {
                t += 0.0025;
                ReducedPoint p;
                p.arrival_time = t;
                for (int d = 0; d < 45; ++d) p.values.push_back(rng.gaussian(1.0, 0.01));
                det.classify(p, true, i);
            }
            ReducedPoint attack;
            attack.arrival_time = t + 0.0025;
            for (int d = 0; d < 45; ++d) {
                const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
                attack.values.push_back(rng.gaussian(1.0 + sign * 0.1, 0.01));
            }
            if (det.classify(attack, false, 99) == Verdict::SUSPICIOUS) ++suspicious;
        }
        CHECK(suspicious >= 990);
    }
    SUBCASE("suspicious verdicts never mutate the window, trusted insert exactly one") {
        Detector det(cfg, 1);
        Rng rng(53);
        double t = 0.0;
        for (int i = 0; i < 200; ++i) {
            t += 0.01;
            ReducedPoint p;
            p.arrival_time = t;
            p.values = {rng.gaussian(1.0, rng.uniform() < 0.2 ? 3.0 : 0.01)};
            const int before = det.window().size();
            const double oldest =
                before ? det.window().point(0).arrival_time : -1.0;
            const Verdict v = det.classify(p, i % 3 == 0, i);
            if (v == Verdict::SUSPICIOUS) {
                CHECK(det.window().size() == before);
                CHECK(det.window().point(0).arrival_time == oldest);
            } else {
                CHECK(det.window().point(det.window().size() - 1).arrival_time == t);
            }
        }
    }
    SUBCASE("verdict log is deterministic and append-only") {
        auto run = [&]() {
            Detector det(cfg, 1);
            Rng rng(61);
            double t = 0.0;
            std::vector<Verdict> out;
            for (int i = 0; i < 300; ++i) {
                t += 0.01;
                out.push_back(det.classify(
                    rp({rng.gaussian(1.0, 0.05)}, t), i % 4 != 0, i));
            }
            CHECK(det.verdict_log().size() == 300);
            return out;
        };
        CHECK(run() == run());
    }
    SUBCASE("with DTS disabled verdicts are invariant under sigma_ref") {
        // Same fill and traffic for both detectors; d2 gets its reference
        // stability overwritten mid-stream. DTS off means no verdict may move.
        DetectorConfig c = cfg;
        Detector d1(c, 1);
        Detector d2(c, 1);
        double t = 0.0;
        Rng fill(73);
        for (int i = 0; i < 5; ++i) {
            t += 0.01;
            const ReducedPoint p = rp({fill.gaussian(1.0, 0.01)}, t);
            d1.classify(p, true, i);
            d2.classify(p, true, i);
        }
        Rng traffic(79);
        for (int i = 0; i < 100; ++i) {
            t += 0.01;
            if (i == 50) (void)d2.calibrate_reference();
            const ReducedPoint enc = rp({traffic.gaussian(1.0, 0.01)}, t);
            d1.classify(enc, true, 1000 + i);
            d2.classify(enc, true, 1000 + i);
            t += 0.001;
            const ReducedPoint p = rp({traffic.gaussian(1.0, 0.02)}, t);
            CHECK(d1.classify(p, false, 10 + i) == d2.classify(p, false, 10 + i));
        }
    }
}

TEST_CASE("config validation") {
    DetectorConfig cfg;
    cfg.k = 45;
    cfg.l_w = 45;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = DetectorConfig{};
    cfg.lambda = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = DetectorConfig{};
    cfg.i_min = 80.0; // > i0
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}
