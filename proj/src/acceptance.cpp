// SPDX-License-Identifier: Apache-2.0
//
// Verification suite: ten criteria combining exact oracle equivalence with
// calibrated trend reproduction on the synthetic channel. Each criterion
// pins its thresholds here, in code.

#include "csite/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include "csite/metrics.hpp"
#include "csite/parallel.hpp"
#include "csite/report_io.hpp"
#include "csite/rng.hpp"

namespace csite {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / double(v.size());
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------------------
// Independent brute-force oracles. These deliberately avoid the library's
// window cache and selection code: plain loops, full sorts, and the textbook
// nearest-rank definition.

double oracle_dist(const ReducedPoint& a, const ReducedPoint& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        acc += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
    }
    return std::sqrt(acc);
}

double oracle_tgd(const ReducedPoint& a, const ReducedPoint& b, double lambda) {
    return oracle_dist(a, b) * std::exp(lambda * std::abs(a.arrival_time - b.arrival_time));
}

struct OracleCand {
    double tgd;
    double arrival;
    int index;
};

std::vector<OracleCand> oracle_rank(const ReducedPoint& m,
                                    const std::vector<ReducedPoint>& pts,
                                    double lambda, int exclude) {
    std::vector<OracleCand> all;
    for (int i = 0; i < int(pts.size()); ++i) {
        if (i == exclude) continue;
        all.push_back({oracle_tgd(m, pts[i], lambda), pts[i].arrival_time, i});
    }
    std::sort(all.begin(), all.end(), [](const OracleCand& a, const OracleCand& b) {
        if (a.tgd != b.tgd) return a.tgd < b.tgd;
        if (a.arrival != b.arrival) return a.arrival > b.arrival;
        return a.index < b.index;
    });
    return all;
}

std::vector<int> oracle_knn(const ReducedPoint& m, const std::vector<ReducedPoint>& pts,
                            int k, double lambda) {
    auto ranked = oracle_rank(m, pts, lambda, -1);
    std::vector<int> out;
    for (int i = 0; i < k; ++i) out.push_back(ranked[i].index);
    return out;
}

double oracle_dof(const ReducedPoint& m, const std::vector<ReducedPoint>& pts, int k,
                  double lambda, int exclude = -1) {
    auto ranked = oracle_rank(m, pts, lambda, exclude);
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += ranked[i].tgd;
    return acc / k;
}

double oracle_stability(const std::vector<ReducedPoint>& pts) {
    const int m = int(pts.size()) - 1;
    const std::size_t dims = pts.front().values.size();
    double acc = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
        std::vector<double> diffs;
        for (int j = 0; j < m; ++j) {
            diffs.push_back(std::abs(pts[j].values[d] - pts[j + 1].values[d]));
        }
        double mu = 0.0;
        for (double x : diffs) mu += x;
        mu /= diffs.size();
        double var = 0.0;
        for (double x : diffs) var += (x - mu) * (x - mu);
        acc += std::sqrt(var / (diffs.size() - 1));
    }
    return acc / double(dims);
}

double oracle_percentile(std::vector<double> v, double i) {
    std::sort(v.begin(), v.end());
    const int n = int(v.size());
    int rank = int(std::ceil(i / 100.0 * n));
    rank = std::clamp(rank, 1, n);
    return v[rank - 1];
}

double oracle_threshold(const std::vector<ReducedPoint>& pts, int k, double lambda,
                        double i) {
    std::vector<double> dofs;
    const int n = int(pts.size());
    for (int b = 1; b <= k; ++b) {
        const int idx = n - b;
        dofs.push_back(oracle_dof(pts[idx], pts, k, lambda, idx));
    }
    return oracle_percentile(dofs, i);
}

// ---------------------------------------------------------------------------

DetectorConfig experiment_detector(bool dts) {
    DetectorConfig cfg;
    cfg.k = 5;
    cfg.lambda = 1.0;
    cfg.l_w = 45;
    cfg.i0 = 75.0;
    cfg.dts_enabled = dts;
    cfg.bootstrap = BootstrapPolicy::STRICT;
    return cfg;
}

CreConfig experiment_cre() {
    CreConfig cre;
    // The MF rides closer behind its last precursor than the precursors ride
    // each other; the short frame needs less turnaround.
    cre.mf_gap_s = 0.001;
    return cre;
}

// --------------------------- criterion 1 -----------------------------------

CriterionResult crit_oracle_equivalence(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "oracle-equivalence";
    const auto t0 = Clock::now();

    const int instances = opts.quick ? 200 : 1000;
    Rng rng = Rng::substream(opts.base_seed, 1001);
    int failures = 0;
    std::string first_failure;

    for (int inst = 0; inst < instances && failures == 0; ++inst) {
        const int dim = (inst % 5 == 0) ? 1 + int(rng.next_u64() % 8) : 45;
        const int k = 1 + int(rng.next_u64() % 6);
        const int n = k + 1 + int(rng.next_u64() % 44);
        const double lambda = std::vector<double>{0.0, 0.3, 1.0, 3.0}[inst % 4];
        const double perc = std::vector<double>{5.0, 50.0, 75.0, 99.0,
                                                rng.uniform(1.0, 100.0)}[inst % 5];

        std::vector<ReducedPoint> pts;
        double t = 0.0;
        for (int p = 0; p < n; ++p) {
            t += rng.uniform(0.001, 0.2);
            ReducedPoint rp;
            rp.arrival_time = t;
            if (inst % 7 == 0 && p > 0 && rng.uniform() < 0.3) {
                rp.values = pts[int(rng.next_u64() % pts.size())].values; // duplicates
            } else {
                for (int d = 0; d < dim; ++d) rp.values.push_back(rng.gaussian(1.0, 0.3));
            }
            pts.push_back(rp);
        }
        SlidingWindow w(n, dim);
        for (const auto& p : pts) w.push(p);

        ReducedPoint m;
        m.arrival_time = t + rng.uniform(0.001, 0.1);
        if (inst % 7 == 0) {
            m.values = pts[int(rng.next_u64() % pts.size())].values;
        } else {
            for (int d = 0; d < dim; ++d) m.values.push_back(rng.gaussian(1.0, 0.3));
        }

        const auto got_knn = knn_tgd(m, w, k, lambda);
        const auto want_knn = oracle_knn(m, pts, k, lambda);
        if (got_knn != want_knn) {
            ++failures;
            first_failure = "knn mismatch at instance " + std::to_string(inst);
        }
        if (!close_rel(dof(m, w, k, lambda), oracle_dof(m, pts, k, lambda), 1e-9)) {
            ++failures;
            first_failure = "dof mismatch at instance " + std::to_string(inst);
        }
        if (n >= 3 &&
            !close_rel(channel_stability(w), oracle_stability(pts), 1e-9)) {
            ++failures;
            first_failure = "stability mismatch at instance " + std::to_string(inst);
        }
        if (!close_rel(threshold(w, k, lambda, perc),
                       oracle_threshold(pts, k, lambda, perc), 1e-9)) {
            ++failures;
            first_failure = "threshold mismatch at instance " + std::to_string(inst);
        }
    }

    res.seconds = seconds_since(t0);
    res.passed = failures == 0 && res.seconds < 5.0;
    res.details = failures == 0
                      ? std::to_string(instances) + " instances, all four ops match"
                      : first_failure;
    if (res.seconds >= 5.0) res.details += " [over 5 s budget]";
    return res;
}

// --------------------------- criterion 2 -----------------------------------

CriterionResult crit_algorithm_safety(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "algorithm-safety";
    const auto t0 = Clock::now();

    const double duration = opts.quick ? 10.0 : 30.0;
    long long encrypted_suspicious = 0;
    long long window_violations = 0;
    long long frames = 0;

    const struct {
        char id;
        double fs;
        bool dts;
    } cases[] = {{'A', 50.0, false}, {'G', 100.0, true}};

    for (const auto& c : cases) {
        ScenarioConfig sc = scenario_defaults(c.id, opts.base_seed + (c.id - 'A'));
        sc.duration_s = duration;
        DetectorConfig cfg = experiment_detector(c.dts);
        ScenarioRun run(sc, c.fs);
        Detector det(cfg, std::size_t(sc.n_tx * sc.n_rx * sc.n_sub) / 2);
        det.set_logging(false);

        Frame f;
        std::uint64_t id = 0;
        while (run.next(f)) {
            ++frames;
            const auto& w = det.window();
            const int size_before = w.size();
            const double oldest_before = size_before ? w.point(0).arrival_time : -1.0;
            const double newest_before =
                size_before ? w.point(size_before - 1).arrival_time : -1.0;

            const ReducedPoint p = reduce(amplitudes(f.csi), f.arrival_time);
            const Verdict v = det.classify(p, f.encrypted, id++);

            if (f.encrypted && v == Verdict::SUSPICIOUS) ++encrypted_suspicious;
            const int size_after = w.size();
            if (v == Verdict::SUSPICIOUS) {
                const bool unchanged =
                    size_after == size_before &&
                    (size_after == 0 ||
                     (w.point(0).arrival_time == oldest_before &&
                      w.point(size_after - 1).arrival_time == newest_before));
                if (!unchanged) ++window_violations;
            } else {
                const bool inserted =
                    w.point(size_after - 1).arrival_time == f.arrival_time &&
                    (size_after == size_before + 1 ||
                     (size_before == det.config().l_w && size_after == size_before &&
                      w.point(0).arrival_time >= oldest_before));
                if (!inserted) ++window_violations;
            }
        }
    }

    res.seconds = seconds_since(t0);
    res.passed = encrypted_suspicious == 0 && window_violations == 0;
    res.details = "frames=" + std::to_string(frames) +
                  " encrypted_fn=" + std::to_string(encrypted_suspicious) +
                  " window_violations=" + std::to_string(window_violations);
    return res;
}

// --------------------------- criterion 3 -----------------------------------

CriterionResult crit_txpower_invariance(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "txpower-invariance";
    const auto t0 = Clock::now();

    ScenarioConfig sweep_cfg = scenario_defaults('A', opts.base_seed);
    sweep_cfg.duration_s = opts.quick ? 20.0 : 60.0;
    ScenarioConfig fixed_cfg = sweep_cfg;
    fixed_cfg.attack_txpower = TxpowerMode::FIXED;

    const Trace tr_sweep = run_scenario(sweep_cfg);
    const Trace tr_fixed = run_scenario(fixed_cfg);

    bool csi_identical = tr_sweep.frames.size() == tr_fixed.frames.size();
    if (csi_identical) {
        for (std::size_t i = 0; i < tr_sweep.frames.size() && csi_identical; ++i) {
            const Frame& a = tr_sweep.frames[i];
            const Frame& b = tr_fixed.frames[i];
            csi_identical = a.arrival_time == b.arrival_time &&
                            a.frame_type == b.frame_type && a.seq == b.seq &&
                            a.csi.entries == b.csi.entries;
        }
    }

    // CSITE never reads txpower or RSS, so the verdict logs must be
    // bit-for-bit identical between the two schedules.
    auto run_csite = [](const Trace& tr) {
        DetectorConfig cfg = experiment_detector(false);
        Detector det(cfg, std::size_t(tr.config.n_tx * tr.config.n_rx * tr.config.n_sub) / 2);
        std::uint64_t id = 0;
        for (const Frame& f : tr.frames) {
            det.classify(reduce(amplitudes(f.csi), f.arrival_time), f.encrypted, id++);
        }
        return det.verdict_log();
    };
    const auto log_sweep = run_csite(tr_sweep);
    const auto log_fixed = run_csite(tr_fixed);
    bool verdicts_identical = log_sweep.size() == log_fixed.size();
    if (verdicts_identical) {
        for (std::size_t i = 0; i < log_sweep.size() && verdicts_identical; ++i) {
            const auto& a = log_sweep[i];
            const auto& b = log_fixed[i];
            const bool dof_same = (a.dof == b.dof) || (std::isnan(a.dof) && std::isnan(b.dof));
            const bool tau_same = (a.tau == b.tau) || (std::isnan(a.tau) && std::isnan(b.tau));
            verdicts_identical = a.verdict == b.verdict && dof_same && tau_same &&
                                 a.percentile_used == b.percentile_used;
        }
    }

    const DetectorConfig rss_cfg = experiment_detector(false);
    const DetectionReport rss_sweep = evaluate(tr_sweep, rss_cfg, DetectorKind::RSS_BASELINE);
    const DetectionReport rss_fixed = evaluate(tr_fixed, rss_cfg, DetectorKind::RSS_BASELINE);
    const bool rss_differs = rss_sweep.fp_rate != rss_fixed.fp_rate;

    res.seconds = seconds_since(t0);
    res.passed = csi_identical && verdicts_identical && rss_differs && res.seconds < 30.0;
    res.details = std::string("csi_identical=") + (csi_identical ? "yes" : "no") +
                  " csite_verdicts_identical=" + (verdicts_identical ? "yes" : "no") +
                  " rss_fp sweep=" + fmt(rss_sweep.fp_rate) +
                  " fixed=" + fmt(rss_fixed.fp_rate);
    if (res.seconds >= 30.0) res.details += " [over 30 s budget]";
    return res;
}

// --------------------------- criterion 4 -----------------------------------

CriterionResult crit_stationary_perfection(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "stationary-perfection";
    const auto t0 = Clock::now();

    const std::vector<char> scenarios = {'A', 'B', 'C'};
    const std::vector<double> rates = opts.quick ? std::vector<double>{20.0}
                                                 : std::vector<double>{20.0, 100.0};
    const int n_seeds = opts.quick ? 2 : 10;
    const double duration = opts.quick ? 60.0 : 300.0;

    struct Cell {
        char sc;
        double fs;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (char sc : scenarios)
        for (double fs : rates)
            for (int s = 0; s < n_seeds; ++s)
                cells.push_back({sc, fs, opts.base_seed + std::uint64_t(s)});

    std::vector<DetectionReport> reports(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        ScenarioConfig sc = scenario_defaults(cells[i].sc, cells[i].seed);
        sc.duration_s = duration;
        reports[i] = evaluate_scenario(sc, cells[i].fs, experiment_detector(false),
                                       DetectorKind::CSITE);
    });

    long long fp_violations = 0;
    double worst_fn = 0.0;
    double worst_fp = 0.0;
    for (const auto& r : reports) {
        if (!r.fp_valid || r.fp_rate != 0.0) {
            ++fp_violations;
            worst_fp = std::max(worst_fp, r.fp_rate);
        }
        worst_fn = std::max(worst_fn, r.fn_rate);
    }

    res.seconds = seconds_since(t0);
    res.passed = fp_violations == 0 && worst_fn <= 0.01;
    res.details = std::to_string(reports.size()) + " runs, fp violations=" +
                  std::to_string(fp_violations) + " worst_fp=" + fmt(worst_fp) +
                  " worst_fn=" + fmt(worst_fn) + " (limit 0.01)";
    return res;
}

// --------------------------- criterion 5 -----------------------------------

CriterionResult crit_motion_superiority(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "motion-superiority";
    const auto t0 = Clock::now();

    const std::vector<char> scenarios = {'D', 'E', 'F', 'G'};
    const int n_seeds = opts.quick ? 4 : 30;
    const double duration = opts.quick ? 60.0 : 300.0;
    const double fs = 100.0;

    struct Cell {
        char sc;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (char sc : scenarios)
        for (int s = 0; s < n_seeds; ++s) cells.push_back({sc, opts.base_seed + std::uint64_t(s)});

    std::vector<double> fp_csite(cells.size()), fp_rss(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        ScenarioConfig sc = scenario_defaults(cells[i].sc, cells[i].seed);
        sc.duration_s = duration;
        fp_csite[i] = evaluate_scenario(sc, fs, experiment_detector(false),
                                        DetectorKind::CSITE).fp_rate;
        fp_rss[i] = evaluate_scenario(sc, fs, experiment_detector(false),
                                      DetectorKind::RSS_BASELINE).fp_rate;
    });

    bool ok = true;
    std::ostringstream det;
    for (std::size_t g = 0; g < scenarios.size(); ++g) {
        std::vector<double> c, r;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].sc == scenarios[g]) {
                c.push_back(fp_csite[i]);
                r.push_back(fp_rss[i]);
            }
        }
        const double mc = mean(c), mr = mean(r);
        const double ratio = mc > 0.0 ? mr / mc : std::numeric_limits<double>::infinity();
        const bool scenario_ok = mr > 0.0 && mc <= 0.5 * mr;
        ok = ok && scenario_ok;
        det << scenarios[g] << ": csite=" << fmt(mc) << " rss=" << fmt(mr)
            << " ratio=" << fmt(ratio, 3) << (scenario_ok ? "" : " FAIL") << "  ";
    }

    res.seconds = seconds_since(t0);
    res.passed = ok && res.seconds < 300.0;
    res.details = det.str();
    if (res.seconds >= 300.0) res.details += " [over 5 min budget]";
    return res;
}

// --------------------------- criterion 6 -----------------------------------

CriterionResult crit_fs_monotonicity(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "fs-monotonicity";
    const auto t0 = Clock::now();

    const std::vector<double> rates = {1.0, 5.0, 20.0, 100.0, 400.0};
    const std::vector<char> scenarios = {'A', 'B', 'C', 'D', 'E', 'F', 'G'};
    const int n_seeds = opts.quick ? 3 : 30;
    const double duration = opts.quick ? 30.0 : 60.0;
    // Monte-Carlo slack on the mean when comparing adjacent rates.
    const double slack = 0.005;

    struct Cell {
        double fs;
        char sc;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double fs : rates)
        for (char sc : scenarios)
            for (int s = 0; s < n_seeds; ++s)
                cells.push_back({fs, sc, opts.base_seed + std::uint64_t(s)});

    std::vector<double> fp(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        ScenarioConfig sc = scenario_defaults(cells[i].sc, cells[i].seed);
        sc.duration_s = duration;
        fp[i] = evaluate_scenario(sc, cells[i].fs, experiment_detector(false),
                                  DetectorKind::CSITE).fp_rate;
    });

    auto mean_at = [&](char sc, double fs) {
        std::vector<double> v;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].sc == sc && cells[i].fs == fs) v.push_back(fp[i]);
        }
        return mean(v);
    };

    bool monotone = true;
    std::ostringstream det;
    for (char sc : scenarios) {
        det << sc << ":";
        double prev = 1e9;
        for (double fs : rates) {
            const double m = mean_at(sc, fs);
            det << " " << fmt(m, 3);
            if (m > prev + slack) {
                monotone = false;
                det << "(^)";
            }
            prev = m;
        }
        det << "  ";
    }
    const double g400 = mean_at('G', 400.0);
    const bool g_ok = g400 <= 0.05; // 3% from the reference plus 2 points
    det << "G@400=" << fmt(g400);

    res.seconds = seconds_since(t0);
    res.passed = monotone && g_ok;
    res.details = det.str();
    return res;
}

// --------------------------- criterion 7 -----------------------------------

CriterionResult crit_dts_effectiveness(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "dts-effectiveness";
    const auto t0 = Clock::now();

    const int n_seeds = opts.quick ? 4 : 30;
    const double duration = opts.quick ? 60.0 : 300.0;
    const std::vector<std::pair<double, double>> cases = {{5.0, 0.10}, {20.0, 0.05}};

    std::ostringstream det;
    bool ok = true;
    for (const auto& [fs, limit] : cases) {
        std::vector<double> fp(n_seeds);
        parallel_for(std::size_t(n_seeds), [&](std::size_t i) {
            ScenarioConfig sc = scenario_defaults('G', opts.base_seed + i);
            sc.duration_s = duration;
            fp[i] = evaluate_scenario(sc, fs, experiment_detector(true),
                                      DetectorKind::CSITE).fp_rate;
        });
        const double m = mean(fp);
        const bool case_ok = m <= limit;
        ok = ok && case_ok;
        det << "G@" << fs << "Hz fp=" << fmt(m) << " (limit " << fmt(limit) << ")"
            << (case_ok ? "" : " FAIL") << "  ";
    }

    res.seconds = seconds_since(t0);
    res.passed = ok;
    res.details = det.str();
    return res;
}

// --------------------------- criterion 8 -----------------------------------

CriterionResult crit_cre_benefit(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "cre-benefit";
    const auto t0 = Clock::now();

    const int n_seeds = opts.quick ? 4 : 30;
    const double duration = opts.quick ? 40.0 : 60.0;
    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < n_seeds; ++s) seeds.push_back(opts.base_seed + std::uint64_t(s));

    const DetectorConfig det_cfg = experiment_detector(true);
    const CreConfig cre = experiment_cre();

    auto run_cell = [&](char sc_id, double fs, int l_pre) {
        ScenarioConfig sc = scenario_defaults(sc_id, seeds.front());
        sc.duration_s = duration;
        return evaluate_cre(sc, det_cfg, cre, fs, l_pre, seeds);
    };

    const CreReport a5_0 = run_cell('A', 5.0, 0);
    const CreReport a5_full = run_cell('A', 5.0, det_cfg.l_w);
    const CreReport g5_0 = run_cell('G', 5.0, 0);
    const CreReport g5_full = run_cell('G', 5.0, det_cfg.l_w);
    const CreReport a40_full = run_cell('A', 40.0, det_cfg.l_w);

    const bool a_gain = a5_full.one_shot_rate >= a5_0.one_shot_rate + 0.20;
    const bool g_gain = g5_full.one_shot_rate >= g5_0.one_shot_rate + 0.20;
    const bool a40_ok = a40_full.one_shot_rate >= 0.85;

    std::ostringstream det;
    det << "A@5Hz: " << fmt(a5_0.one_shot_rate) << " -> " << fmt(a5_full.one_shot_rate)
        << (a_gain ? "" : " FAIL") << "  G@5Hz: " << fmt(g5_0.one_shot_rate) << " -> "
        << fmt(g5_full.one_shot_rate) << (g_gain ? "" : " FAIL")
        << "  A@40Hz full=" << fmt(a40_full.one_shot_rate) << " (need >= 0.85)"
        << (a40_ok ? "" : " FAIL");

    res.seconds = seconds_since(t0);
    res.passed = a_gain && g_gain && a40_ok;
    res.details = det.str();
    return res;
}

// --------------------------- criterion 9 -----------------------------------

CriterionResult crit_performance(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "performance-envelope";
    const auto t0 = Clock::now();

    // Amortized classify cost at l_w = 45, k = 5 over a realistic mix.
    DetectorConfig cfg = experiment_detector(true);
    Detector det(cfg, 45);
    det.set_logging(false);
    Rng rng = Rng::substream(opts.base_seed, 2001);
    std::vector<ReducedPoint> pts;
    const int n_bench = opts.quick ? 20000 : 60000;
    double t = 0.0;
    for (int i = 0; i < n_bench; ++i) {
        t += 0.0025;
        ReducedPoint p;
        p.arrival_time = t;
        for (int d = 0; d < 45; ++d) p.values.push_back(rng.gaussian(1.0, 0.01));
        pts.push_back(std::move(p));
    }
    const auto bench0 = Clock::now();
    for (int i = 0; i < n_bench; ++i) {
        det.classify(pts[i], i % 4 != 3, std::uint64_t(i));
    }
    const double per_classify_us = seconds_since(bench0) / n_bench * 1e6;

    // Full scenario-G run at the native 400 Hz rate, simulate + detect.
    const auto run0 = Clock::now();
    ScenarioConfig sc = scenario_defaults('G', opts.base_seed);
    sc.duration_s = opts.quick ? 60.0 : 300.0;
    const DetectionReport rep =
        evaluate_scenario(sc, 0.0, experiment_detector(true), DetectorKind::CSITE);
    const double run_seconds = seconds_since(run0);

    res.seconds = seconds_since(t0);
    res.passed = per_classify_us <= 50.0 && run_seconds < 10.0;
    res.details = "classify=" + fmt(per_classify_us, 3) + "us (limit 50)  G-run " +
                  fmt(sc.duration_s, 3) + "s x " + std::to_string(rep.n_frames) +
                  " frames in " + fmt(run_seconds, 3) + "s (limit 10)";
    return res;
}

// --------------------------- criterion 10 ----------------------------------

CriterionResult crit_determinism(const AcceptanceOptions& opts) {
    CriterionResult res;
    res.name = "determinism";
    const auto t0 = Clock::now();

    auto produce = [&]() {
        std::vector<DetectionReport> detection;
        ScenarioConfig sc = scenario_defaults('A', opts.base_seed);
        sc.duration_s = opts.quick ? 20.0 : 30.0;
        detection.push_back(evaluate_scenario(sc, 20.0, experiment_detector(false),
                                              DetectorKind::CSITE));

        SweepRequest req;
        req.axis = SweepAxis::FS;
        req.values = {20.0, 100.0};
        req.base_detector = experiment_detector(false);
        req.scenarios = {'A', 'G'};
        req.seeds = {opts.base_seed, opts.base_seed + 1};
        req.duration_s = opts.quick ? 20.0 : 30.0;
        SweepResult sw = sweep(req);
        detection.insert(detection.end(), sw.detection.begin(), sw.detection.end());

        ScenarioConfig cre_sc = scenario_defaults('A', opts.base_seed);
        cre_sc.duration_s = opts.quick ? 20.0 : 30.0;
        const CreReport cre = evaluate_cre(cre_sc, experiment_detector(true),
                                           experiment_cre(), 5.0, 45,
                                           {opts.base_seed, opts.base_seed + 1});

        return detection_reports_to_json(detection) + cre_reports_to_json({cre}) +
               detection_reports_to_csv(detection) + cre_reports_to_csv({cre});
    };

    const std::string pass1 = produce();
    const std::string pass2 = produce();
    const bool identical = pass1 == pass2;

    if (!opts.report_dir.empty()) {
        std::filesystem::create_directories(opts.report_dir);
        write_text_file(opts.report_dir + "/reports_pass1.txt", pass1);
        write_text_file(opts.report_dir + "/reports_pass2.txt", pass2);
    }

    res.seconds = seconds_since(t0);
    res.passed = identical;
    res.details = identical ? "two runs produced byte-identical report files"
                            : "report bytes differ between runs";
    return res;
}

} // namespace

AcceptanceSummary run_acceptance(const AcceptanceOptions& opts, std::ostream& out) {
    const std::vector<std::function<CriterionResult(const AcceptanceOptions&)>> criteria = {
        crit_oracle_equivalence, crit_algorithm_safety, crit_txpower_invariance,
        crit_stationary_perfection, crit_motion_superiority, crit_fs_monotonicity,
        crit_dts_effectiveness, crit_cre_benefit, crit_performance, crit_determinism,
    };

    AcceptanceSummary summary;
    summary.all_passed = true;
    out << "verification suite (seed " << opts.base_seed
        << (opts.quick ? ", quick mode" : "") << ")\n";
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CriterionResult r = criteria[i](opts);
        summary.all_passed = summary.all_passed && r.passed;
        char line[64];
        std::snprintf(line, sizeof(line), "[%2zu/10] %s %-24s", i + 1,
                      r.passed ? "PASS" : "FAIL", r.name.c_str());
        out << line << " (" << fmt(r.seconds, 3) << "s)  " << r.details << "\n";
        out.flush();
        summary.results.push_back(std::move(r));
    }
    out << (summary.all_passed ? "all criteria passed" : "SUITE FAILED") << "\n";
    return summary;
}

} // namespace csite
