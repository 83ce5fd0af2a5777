// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "csite/csi.hpp"
#include "csite/rng.hpp"

namespace csite {

// Synthetic fading link between one transmitter and the station under test.
// Complex gain per (antenna pair, subcarrier) evolves as a mean-reverting
// AR(1) process around per-subcarrier long-term means; measurement noise is
// added per sample, not to the state.
struct ChannelState {
    int n_tx = 1;
    int n_rx = 3;
    int n_sub = 30;
    std::vector<std::complex<double>> mean_gains;
    std::vector<std::complex<double>> gains;
    double doppler_hz = 0.0;     // channel dynamics rate
    double fading_std = 0.0;     // std of the complex deviation around the mean
    double meas_noise_std = 0.0; // per-entry complex measurement noise std
    double shadow_std_db = 2.0;  // RSS shadowing

    int dim() const { return n_tx * n_rx * n_sub; }
};

// Draws long-term means (smooth across adjacent subcarriers) and the initial
// fading deviation from its stationary distribution.
ChannelState init_channel(int n_tx, int n_rx, int n_sub, double doppler_hz,
                          double fading_std, double meas_noise_std,
                          double mean_gain_scale, double shadow_std_db, Rng& rng);

// Advances the fading by dt seconds: g <- mu + rho (g - mu) + sqrt(1-rho^2) e,
// rho = exp(-2 pi doppler dt). dt = 0 and doppler = 0 are identities.
void step_channel(ChannelState& ch, double dt, Rng& rng);

// Current gains plus independent complex measurement noise per entry.
// Txpower does not enter anywhere in the CSI path.
CsiMatrix sample_csi(const ChannelState& ch, Rng& rng);

// RSS = txpower + 10 log10(sum |gain|^2) + shadowing.
double rss_of(const ChannelState& ch, double txpower_dbm, Rng& rng);

} // namespace csite
