// SPDX-License-Identifier: Apache-2.0
#include "csite/detector.hpp"

#include <algorithm>
#include <cmath>

namespace csite {

void DetectorConfig::validate() const {
    if (k < 1 || k >= l_w) {
        throw InvalidConfig("detector: need 1 <= k < l_w, got k=" + std::to_string(k) +
                            " l_w=" + std::to_string(l_w));
    }
    if (lambda < 0.0) {
        throw InvalidConfig("detector: lambda must be >= 0");
    }
    if (!(0.0 < i_min && i_min <= i0 && i0 <= i_max && i_max <= 100.0)) {
        throw InvalidConfig("detector: need 0 < i_min <= i0 <= i_max <= 100");
    }
    if (sigma_ref_floor <= 0.0) {
        throw InvalidConfig("detector: sigma_ref_floor must be > 0");
    }
}

SlidingWindow::SlidingWindow(int capacity, std::size_t point_dim)
    : capacity_(capacity), point_dim_(point_dim) {
    if (capacity < 1) {
        throw InvalidConfig("window capacity must be >= 1");
    }
    slots_.resize(capacity_);
    dist_.assign(static_cast<std::size_t>(capacity_) * capacity_, 0.0);
    order_.reserve(capacity_);
}

void SlidingWindow::push(const ReducedPoint& p) {
    if (p.values.size() != point_dim_) {
        throw DimensionMismatch("window: point dim " + std::to_string(p.values.size()) +
                                " != " + std::to_string(point_dim_));
    }
    int slot;
    if (full()) {
        slot = order_.front();
        order_.erase(order_.begin());
    } else {
        slot = size();
    }
    slots_[slot] = p;
    for (int i = 0; i < size(); ++i) {
        const int other = order_[i];
        const double d = euclidean_dist(p, slots_[other]);
        dist_[slot * capacity_ + other] = d;
        dist_[other * capacity_ + slot] = d;
    }
    dist_[slot * capacity_ + slot] = 0.0;
    order_.push_back(slot);
}

double following_coefficient(double t_a, double t_b, double lambda) {
    return std::exp(lambda * std::abs(t_a - t_b));
}

double tgd(const ReducedPoint& a, const ReducedPoint& b, double lambda) {
    return euclidean_dist(a, b) *
           following_coefficient(a.arrival_time, b.arrival_time, lambda);
}

namespace {

struct Candidate {
    double tgd;
    double arrival;
    int index;
};

// tgd ascending; ties prefer newer arrival, then lower buffer index.
bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.tgd != b.tgd) return a.tgd < b.tgd;
    if (a.arrival != b.arrival) return a.arrival > b.arrival;
    return a.index < b.index;
}

// Smallest k by the knn ordering, over tgds to an external point m.
std::vector<Candidate> rank_external(const ReducedPoint& m, const SlidingWindow& w,
                                     double lambda) {
    std::vector<Candidate> cands;
    cands.reserve(w.size());
    for (int i = 0; i < w.size(); ++i) {
        const ReducedPoint& p = w.point(i);
        cands.push_back({tgd(m, p, lambda), p.arrival_time, i});
    }
    return cands;
}

} // namespace

std::vector<int> knn_tgd(const ReducedPoint& m, const SlidingWindow& w, int k,
                         double lambda) {
    if (w.size() < k) {
        throw WindowTooSmall("knn_tgd: window has " + std::to_string(w.size()) +
                             " points, need " + std::to_string(k));
    }
    std::vector<Candidate> cands = rank_external(m, w, lambda);
    std::partial_sort(cands.begin(), cands.begin() + k, cands.end(), candidate_less);
    std::vector<int> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) out.push_back(cands[i].index);
    return out;
}

double dof(const ReducedPoint& m, const SlidingWindow& w, int k, double lambda) {
    if (w.size() < k) {
        throw WindowTooSmall("dof: window has " + std::to_string(w.size()) +
                             " points, need " + std::to_string(k));
    }
    std::vector<Candidate> cands = rank_external(m, w, lambda);
    std::partial_sort(cands.begin(), cands.begin() + k, cands.end(), candidate_less);
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += cands[i].tgd;
    return acc / k;
}

double dof_member(const SlidingWindow& w, int idx, int k, double lambda) {
    if (w.size() < k + 1) {
        throw WindowTooSmall("dof_member: window has " + std::to_string(w.size()) +
                             " points, need " + std::to_string(k + 1));
    }
    const ReducedPoint& q = w.point(idx);
    std::vector<Candidate> cands;
    cands.reserve(w.size() - 1);
    for (int i = 0; i < w.size(); ++i) {
        if (i == idx) continue; // self-exclusion
        const ReducedPoint& p = w.point(i);
        const double t = w.cached_dist(idx, i) *
                         following_coefficient(q.arrival_time, p.arrival_time, lambda);
        cands.push_back({t, p.arrival_time, i});
    }
    std::partial_sort(cands.begin(), cands.begin() + k, cands.end(), candidate_less);
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += cands[i].tgd;
    return acc / k;
}

double channel_stability(const SlidingWindow& w) {
    const int n = w.size();
    if (n < 3) {
        throw WindowTooSmall("channel_stability: need >= 3 points, have " +
                             std::to_string(n));
    }
    const std::size_t dims = w.point_dim();
    const int m = n - 1; // adjacent difference count
    double acc = 0.0;
    std::vector<double> diffs(m);
    for (std::size_t d = 0; d < dims; ++d) {
        double mean = 0.0;
        for (int j = 0; j < m; ++j) {
            diffs[j] = std::abs(w.point(j).values[d] - w.point(j + 1).values[d]);
            mean += diffs[j];
        }
        mean /= m;
        double var = 0.0;
        for (int j = 0; j < m; ++j) {
            const double e = diffs[j] - mean;
            var += e * e;
        }
        acc += std::sqrt(var / (m - 1));
    }
    return acc / static_cast<double>(dims);
}

double percentile_nearest_rank(std::vector<double> values, double i) {
    if (values.empty()) {
        throw InvalidConfig("percentile of empty set");
    }
    std::sort(values.begin(), values.end());
    const int n = static_cast<int>(values.size());
    int rank = static_cast<int>(std::ceil(i / 100.0 * n));
    rank = std::clamp(rank, 1, n);
    return values[rank - 1];
}

double dynamic_percentile(double sigma_w, double sigma_ref, const DetectorConfig& cfg) {
    if (!cfg.dts_enabled) {
        return cfg.i0;
    }
    if (sigma_ref < cfg.sigma_ref_floor) {
        throw NotCalibrated("dynamic_percentile: sigma_ref unset");
    }
    const double i1 = cfg.i0 * sigma_ref / std::max(sigma_w, cfg.sigma_ref_floor);
    return std::clamp(i1, cfg.i_min, cfg.i_max);
}

double threshold(const SlidingWindow& w, int k, double lambda, double i) {
    if (w.size() < k + 1) {
        throw WindowTooSmall("threshold: window has " + std::to_string(w.size()) +
                             " points, need " + std::to_string(k + 1));
    }
    std::vector<double> dofs;
    dofs.reserve(k);
    for (int b = 1; b <= k; ++b) {
        dofs.push_back(dof_member(w, w.size() - b, k, lambda));
    }
    return percentile_nearest_rank(std::move(dofs), i);
}

Detector::Detector(const DetectorConfig& cfg, std::size_t point_dim)
    : cfg_(cfg), window_(cfg.l_w, point_dim) {
    cfg_.validate();
}

void Detector::accept(const ReducedPoint& p) {
    window_.push(p);
    if (!calibrated_ && window_.full()) {
        calibrate_reference();
    }
}

double Detector::calibrate_reference() {
    if (!window_.full()) {
        throw WindowNotFull("calibrate_reference: window has " +
                            std::to_string(window_.size()) + "/" +
                            std::to_string(window_.capacity()) + " points");
    }
    sigma_ref_ = std::max(channel_stability(window_), cfg_.sigma_ref_floor);
    calibrated_ = true;
    return sigma_ref_;
}

Verdict Detector::classify(const ReducedPoint& p, bool encrypted,
                           std::uint64_t frame_id) {
    VerdictRecord rec;
    rec.frame_id = frame_id;

    if (encrypted) {
        accept(p);
        rec.verdict = Verdict::TRUSTED;
        if (logging_) log_.push_back(rec);
        return rec.verdict;
    }

    if (!calibrated_) {
        if (cfg_.bootstrap == BootstrapPolicy::STRICT) {
            rec.verdict = Verdict::SUSPICIOUS;
        } else {
            accept(p);
            rec.verdict = Verdict::TRUSTED;
        }
        if (logging_) log_.push_back(rec);
        return rec.verdict;
    }

    const double sigma_w = channel_stability(window_);
    const double i = dynamic_percentile(sigma_w, sigma_ref_, cfg_);
    const double d = dof(p, window_, cfg_.k, cfg_.lambda);
    const double tau = threshold(window_, cfg_.k, cfg_.lambda, i);

    rec.dof = d;
    rec.tau = tau;
    rec.percentile_used = i;
    if (d <= tau) {
        accept(p);
        rec.verdict = Verdict::TRUSTED;
    } else {
        rec.verdict = Verdict::SUSPICIOUS; // window untouched
    }
    if (logging_) log_.push_back(rec);
    return rec.verdict;
}

} // namespace csite
