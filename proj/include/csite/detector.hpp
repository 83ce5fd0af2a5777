// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "csite/csi.hpp"
#include "csite/errors.hpp"

namespace csite {

// Until the window first fills and the stability reference is measured,
// STRICT classifies every management frame as suspicious (fail safe);
// PERMISSIVE accepts them, which is only appropriate in experiments.
enum class BootstrapPolicy : std::uint8_t { STRICT = 0, PERMISSIVE = 1 };

struct DetectorConfig {
    int k = 5;                     // nearest neighbors
    double lambda = 1.0;           // time gain factor, 1/s
    int l_w = 45;                  // window length, k + 40
    double i0 = 75.0;              // base acceptance percentile
    bool dts_enabled = true;       // dynamic threshold scaling
    double i_min = 5.0;            // percentile clamp
    double i_max = 99.0;
    double sigma_ref_floor = 1e-9; // minimal reference stability
    double t_im = 1.0;             // max CSI-update interval, s
    BootstrapPolicy bootstrap = BootstrapPolicy::STRICT;

    // Throws InvalidConfig when an invariant is violated.
    void validate() const;
};

enum class Verdict : std::uint8_t { TRUSTED = 0, SUSPICIOUS = 1 };

struct VerdictRecord {
    std::uint64_t frame_id = 0;
    double dof = std::numeric_limits<double>::quiet_NaN();
    double tau = std::numeric_limits<double>::quiet_NaN();
    double percentile_used = 0.0;
    Verdict verdict = Verdict::TRUSTED;
};

// Ordered buffer of the last l_w trusted points with a cached pairwise
// distance matrix. Points occupy fixed slots; eviction frees a slot for the
// incoming point, so each insertion costs one distance row.
class SlidingWindow {
public:
    explicit SlidingWindow(int capacity, std::size_t point_dim);

    int size() const { return static_cast<int>(order_.size()); }
    int capacity() const { return capacity_; }
    bool full() const { return size() == capacity_; }
    std::size_t point_dim() const { return point_dim_; }

    // i = 0 oldest .. size()-1 newest.
    const ReducedPoint& point(int i) const { return slots_[order_[i]]; }

    // Cached euclidean distance between buffer positions i and j.
    double cached_dist(int i, int j) const {
        return dist_[order_[i] * capacity_ + order_[j]];
    }

    // Inserts newest point, evicting the oldest when full.
    void push(const ReducedPoint& p);

private:
    int capacity_;
    std::size_t point_dim_;
    std::vector<ReducedPoint> slots_;
    std::vector<int> order_; // slot ids, oldest first
    std::vector<double> dist_;
};

// f_c(A,B) = e^{lambda * |t_a - t_b|}
double following_coefficient(double t_a, double t_b, double lambda);

// Time-gained distance: euclidean distance scaled by the following coefficient.
double tgd(const ReducedPoint& a, const ReducedPoint& b, double lambda);

// Indices (buffer positions) of the k window points with smallest tgd to m.
// Ties prefer newer arrival_time, then lower buffer index.
std::vector<int> knn_tgd(const ReducedPoint& m, const SlidingWindow& w, int k,
                         double lambda);

// Mean tgd from m to its k nearest window points.
double dof(const ReducedPoint& m, const SlidingWindow& w, int k, double lambda);

// DoF of the window member at buffer position idx against the rest of the
// window (self excluded), using the cached distance matrix.
double dof_member(const SlidingWindow& w, int idx, int k, double lambda);

// Mean over dimensions of the std (n-1 denominator) of adjacent-point
// absolute differences. Requires at least 3 points.
double channel_stability(const SlidingWindow& w);

// Nearest-rank percentile: ascending sort, element at index
// ceil(i/100 * n) clamped to [1, n] (1-based).
double percentile_nearest_rank(std::vector<double> values, double i);

// i1 = clamp(i0 * sigma_ref / max(sigma_w, floor), i_min, i_max); returns i0
// unconditionally when DTS is disabled.
double dynamic_percentile(double sigma_w, double sigma_ref, const DetectorConfig& cfg);

// tau = nearest-rank i-th percentile of the DoFs of the k most recently
// accepted window points, each computed with itself excluded.
double threshold(const SlidingWindow& w, int k, double lambda, double i);

// Streaming spoofing filter: holds the trusted window, the stability
// reference and the verdict log, and classifies frames one at a time.
class Detector {
public:
    explicit Detector(const DetectorConfig& cfg, std::size_t point_dim);

    // Algorithm: encrypted frames are trusted and enter the window; for a
    // management frame, DoF is compared against the dynamic threshold.
    // Suspicious verdicts leave the window untouched.
    Verdict classify(const ReducedPoint& p, bool encrypted, std::uint64_t frame_id);

    // Measures sigma_ref from the current (full) window. Called
    // automatically the first time the window fills.
    double calibrate_reference();

    bool calibrated() const { return calibrated_; }
    double sigma_ref() const { return sigma_ref_; }
    const SlidingWindow& window() const { return window_; }
    const DetectorConfig& config() const { return cfg_; }
    const std::vector<VerdictRecord>& verdict_log() const { return log_; }

    // Disables the verdict log to keep long sweeps lean.
    void set_logging(bool on) { logging_ = on; }

private:
    void accept(const ReducedPoint& p);

    DetectorConfig cfg_;
    SlidingWindow window_;
    double sigma_ref_ = 0.0;
    bool calibrated_ = false;
    bool logging_ = true;
    std::vector<VerdictRecord> log_;
};

} // namespace csite
