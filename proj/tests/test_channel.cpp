// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>

#include "csite/channel.hpp"

using namespace csite;

TEST_CASE("static channel never moves") {
    Rng init(1);
    ChannelState ch = init_channel(1, 3, 30, 0.0, 0.1, 0.0, 1.0, 2.0, init);
    const auto gains = ch.gains;
    Rng rng(2);
    step_channel(ch, 10.0, rng);
    CHECK(ch.gains == gains);
    ch.doppler_hz = 5.0;
    step_channel(ch, 0.0, rng);
    CHECK(ch.gains == gains);
}

TEST_CASE("fading autocorrelation follows the AR(1) curve") {
    Rng init(3);
    const double doppler = 2.0;
    const double dt = 0.01;
    ChannelState ch = init_channel(1, 1, 2, doppler, 0.2, 0.0, 1.0, 2.0, init);
    Rng rng(4);
    const int n = 100000;
    std::vector<double> dev_re(n);
    for (int i = 0; i < n; ++i) {
        step_channel(ch, dt, rng);
        dev_re[i] = (ch.gains[0] - ch.mean_gains[0]).real();
    }
    double var = 0.0;
    for (double x : dev_re) var += x * x;
    var /= n;
    const double rho = std::exp(-2.0 * M_PI * doppler * dt);
    for (int lag : {1, 5, 10, 25}) {
        double acc = 0.0;
        for (int i = 0; i + lag < n; ++i) acc += dev_re[i] * dev_re[i + lag];
        const double corr = acc / double(n - lag) / var;
        CHECK(std::abs(corr - std::pow(rho, lag)) < 0.05);
    }
}

TEST_CASE("csi sampling") {
    Rng init(5);
    ChannelState ch = init_channel(1, 3, 30, 0.0, 0.05, 0.0, 1.0, 2.0, init);

    SUBCASE("no noise reproduces the gains exactly") {
        Rng rng(6);
        const CsiMatrix csi = sample_csi(ch, rng);
        CHECK(csi.entries == ch.gains);
        Rng rng2(7);
        CHECK(sample_csi(ch, rng2).entries == csi.entries);
    }
    SUBCASE("amplitude sample mean approaches the true gain amplitude") {
        ch.meas_noise_std = 0.02;
        Rng rng(8);
        const double truth = std::abs(ch.gains[0]);
        double acc = 0.0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            acc += std::abs(sample_csi(ch, rng).entries[0]);
        }
        CHECK(std::abs(acc / n - truth) < 3.0 * ch.meas_noise_std / 100.0);
    }
}

TEST_CASE("rss model") {
    Rng init(9);
    ChannelState ch = init_channel(1, 3, 30, 0.0, 0.05, 0.0, 1.0, 0.0, init);

    SUBCASE("additive in txpower for the same draw") {
        Rng r1(10), r2(10);
        const double a = rss_of(ch, 5.0, r1);
        const double b = rss_of(ch, 8.0, r2);
        CHECK(b - a == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("unit total gain power maps txpower straight through") {
        ChannelState unit = ch;
        unit.gains.assign(unit.gains.size(), {0.0, 0.0});
        unit.gains[0] = {1.0, 0.0};
        unit.shadow_std_db = 0.0;
        Rng rng(11);
        CHECK(rss_of(unit, 7.0, rng) == doctest::Approx(7.0).epsilon(1e-12));
    }
    SUBCASE("shadowing variance matches its configuration") {
        ch.shadow_std_db = 2.0;
        Rng rng(12);
        const int n = 20000;
        std::vector<double> xs(n);
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            xs[i] = rss_of(ch, 10.0, rng);
            mean += xs[i];
        }
        mean /= n;
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= n - 1;
        CHECK(std::abs(var - 4.0) < 0.4); // within 10%
    }
}
