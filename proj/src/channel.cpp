// SPDX-License-Identifier: Apache-2.0
#include "csite/channel.hpp"

#include <cmath>

namespace csite {

namespace {

std::complex<double> complex_gaussian(Rng& rng, double std) {
    // std is the std of the complex value; components get std/sqrt(2).
    const double c = std * M_SQRT1_2;
    return {rng.gaussian(0.0, c), rng.gaussian(0.0, c)};
}

} // namespace

ChannelState init_channel(int n_tx, int n_rx, int n_sub, double doppler_hz,
                          double fading_std, double meas_noise_std,
                          double mean_gain_scale, double shadow_std_db, Rng& rng) {
    ChannelState ch;
    ch.n_tx = n_tx;
    ch.n_rx = n_rx;
    ch.n_sub = n_sub;
    ch.doppler_hz = doppler_hz;
    ch.fading_std = fading_std;
    ch.meas_noise_std = meas_noise_std;
    ch.shadow_std_db = shadow_std_db;

    // Boxcar-smoothed complex Gaussian along the subcarrier axis gives the
    // frequency response the continuous structure of a multipath channel
    // while keeping antenna streams independent.
    const int smooth = 7;
    ch.mean_gains.reserve(ch.dim());
    for (int pair = 0; pair < n_tx * n_rx; ++pair) {
        std::vector<std::complex<double>> raw(n_sub + smooth - 1);
        for (auto& z : raw) z = complex_gaussian(rng, 1.0);
        for (int s = 0; s < n_sub; ++s) {
            std::complex<double> acc{0.0, 0.0};
            for (int w = 0; w < smooth; ++w) acc += raw[s + w];
            ch.mean_gains.push_back(acc * (mean_gain_scale / std::sqrt(double(smooth))));
        }
    }

    // Stationary start for the deviation.
    ch.gains.resize(ch.dim());
    for (int i = 0; i < ch.dim(); ++i) {
        ch.gains[i] = ch.mean_gains[i] + complex_gaussian(rng, fading_std);
    }
    return ch;
}

void step_channel(ChannelState& ch, double dt, Rng& rng) {
    if (dt < 0.0) {
        throw InvalidConfig("step_channel: dt must be >= 0");
    }
    if (dt == 0.0 || ch.doppler_hz == 0.0) {
        return;
    }
    const double rho = std::exp(-2.0 * M_PI * ch.doppler_hz * dt);
    const double innov = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (int i = 0; i < ch.dim(); ++i) {
        const std::complex<double> dev = ch.gains[i] - ch.mean_gains[i];
        ch.gains[i] = ch.mean_gains[i] + rho * dev +
                      innov * complex_gaussian(rng, ch.fading_std);
    }
}

CsiMatrix sample_csi(const ChannelState& ch, Rng& rng) {
    CsiMatrix csi;
    csi.n_tx = ch.n_tx;
    csi.n_rx = ch.n_rx;
    csi.n_sub = ch.n_sub;
    csi.entries.reserve(ch.dim());
    for (int i = 0; i < ch.dim(); ++i) {
        std::complex<double> noise{0.0, 0.0};
        if (ch.meas_noise_std > 0.0) {
            noise = complex_gaussian(rng, ch.meas_noise_std);
        }
        csi.entries.push_back(ch.gains[i] + noise);
    }
    return csi;
}

double rss_of(const ChannelState& ch, double txpower_dbm, Rng& rng) {
    double power = 0.0;
    for (const auto& g : ch.gains) power += std::norm(g);
    const double shadow = ch.shadow_std_db > 0.0 ? rng.gaussian(0.0, ch.shadow_std_db) : 0.0;
    return txpower_dbm + 10.0 * std::log10(power) + shadow;
}

} // namespace csite
