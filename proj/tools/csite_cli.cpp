// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: simulate scenarios, replay traces through the
// detector, run parameter sweeps, evaluate the delivery-assurance protocol,
// and reproduce the full verification suite.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csite/acceptance.hpp"
#include "csite/metrics.hpp"
#include "csite/report_io.hpp"
#include "csite/trace_io.hpp"

namespace {

using namespace csite;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAcceptance = 3;

struct CommonOpts {
    std::string scenario = "A";
    std::uint64_t seed = 1;
    double fs = 0.0; // 0 = native
    int k = 5;
    int lw = 45;
    double lambda = 1.0;
    double i0 = 75.0;
    std::string dts = "on";
    int lpre = 0;
    double duration = 300.0;
    std::string out;
    std::string format = "structured";
};

DetectorConfig detector_from(const CommonOpts& o) {
    DetectorConfig cfg;
    cfg.k = o.k;
    cfg.l_w = o.lw;
    cfg.lambda = o.lambda;
    cfg.i0 = o.i0;
    cfg.dts_enabled = (o.dts == "on");
    cfg.validate();
    return cfg;
}

void add_detector_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--k", o.k, "nearest neighbor count");
    cmd->add_option("--lw", o.lw, "sliding window length");
    cmd->add_option("--lambda", o.lambda, "time gain factor (1/s)");
    cmd->add_option("--i0", o.i0, "base acceptance percentile");
    cmd->add_option("--dts", o.dts, "dynamic threshold scaling: on|off")
        ->check(CLI::IsMember({"on", "off"}));
}

// Config files hold key=value lines mirroring the long flag names. Values
// are applied only for flags absent from the command line, so explicit flags
// always win. '#' starts a comment.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) continue;
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                present = true;
                break;
            }
        }
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

void emit_detection(const std::vector<DetectionReport>& reports,
                    const CommonOpts& o) {
    const std::string text = o.format == "csv" ? detection_reports_to_csv(reports)
                                               : detection_reports_to_json(reports);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(o.out, text);
    }
}

void emit_cre(const std::vector<CreReport>& reports, const CommonOpts& o) {
    const std::string text = o.format == "csv" ? cre_reports_to_csv(reports)
                                               : cre_reports_to_json(reports);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(o.out, text);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSI-based management frame source authentication toolkit"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* sim = app.add_subcommand("simulate", "generate a labeled scenario trace");
    sim->add_option("--scenario", o.scenario, "scenario id A..G")
        ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
    sim->add_option("--seed", o.seed, "random seed");
    sim->add_option("--duration", o.duration, "trace length in seconds");
    sim->add_option("--out", o.out, "output trace path")->required();

    auto* det = app.add_subcommand("detect", "replay a trace through the detector");
    static std::string det_trace;
    det->add_option("trace", det_trace, "trace file (from simulate)")->required();
    static std::string det_kind = "csite";
    det->add_option("--kind", det_kind, "detector kind: csite|rss")
        ->check(CLI::IsMember({"csite", "rss"}));
    static double det_fs = 0.0;
    det->add_option("--fs", det_fs, "decimate DATA frames to this rate (Hz)");
    det->add_option("--out", o.out, "report output path");
    det->add_option("--format", o.format, "csv|structured")
        ->check(CLI::IsMember({"csv", "structured"}));
    add_detector_flags(det, o);

    auto* swp = app.add_subcommand("sweep", "parameter sweep over scenarios/seeds");
    static std::string axis_name = "fs";
    static std::vector<double> axis_values;
    static std::vector<std::string> sweep_scenarios = {"A", "G"};
    static int n_seeds = 5;
    swp->add_option("--axis", axis_name, "fs|k|lw|dts|lpre")
        ->check(CLI::IsMember({"fs", "k", "lw", "dts", "lpre"}));
    swp->add_option("--values", axis_values, "axis values")->required();
    swp->add_option("--scenarios", sweep_scenarios, "scenario ids");
    swp->add_option("--seeds", n_seeds, "number of seeds (1..N)");
    swp->add_option("--seed", o.seed, "first seed");
    swp->add_option("--fs", o.fs, "fixed update rate for non-fs axes (Hz)");
    swp->add_option("--duration", o.duration, "per-run duration (s)");
    swp->add_option("--out", o.out, "report output path");
    swp->add_option("--format", o.format, "csv|structured")
        ->check(CLI::IsMember({"csv", "structured"}));
    add_detector_flags(swp, o);

    auto* cre = app.add_subcommand("cre", "evaluate MF delivery assurance");
    cre->add_option("--scenario", o.scenario, "scenario id A..G")
        ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
    cre->add_option("--seed", o.seed, "first seed");
    static int cre_seeds = 10;
    cre->add_option("--seeds", cre_seeds, "number of seeds");
    cre->add_option("--fs", o.fs, "background DATA rate (Hz, 0 = native)");
    cre->add_option("--lpre", o.lpre, "precursor count on the first attempt");
    cre->add_option("--duration", o.duration, "per-run duration (s)");
    cre->add_option("--out", o.out, "report output path");
    cre->add_option("--format", o.format, "csv|structured")
        ->check(CLI::IsMember({"csv", "structured"}));
    add_detector_flags(cre, o);

    auto* rep = app.add_subcommand("reproduce", "run the full verification suite");
    rep->add_option("--seed", o.seed, "base seed");
    static std::string rep_out;
    rep->add_option("--out", rep_out, "directory for the suite's report files");
    static bool rep_quick = false;
    rep->add_flag("--quick", rep_quick, "reduced durations/seed counts (smoke run)");
    for (CLI::App* cmd : {sim, det, swp, cre, rep}) {
        cmd->add_option("--config", "key=value config file mirroring these flags");
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    try {
        if (sim->parsed()) {
            ScenarioConfig sc = scenario_defaults(o.scenario[0], o.seed);
            sc.duration_s = o.duration;
            write_trace(run_scenario(sc), o.out);
            std::cout << "wrote " << o.out << "\n";
            return kExitOk;
        }

        if (det->parsed()) {
            Trace trace = read_trace(det_trace);
            if (det_fs > 0.0) trace = decimate(trace, det_fs);
            const DetectorKind kind =
                det_kind == "rss" ? DetectorKind::RSS_BASELINE : DetectorKind::CSITE;
            DetectionReport r = evaluate(trace, detector_from(o), kind);
            r.f_s = det_fs;
            emit_detection({r}, o);
            return kExitOk;
        }

        if (swp->parsed()) {
            SweepRequest req;
            if (axis_name == "fs") req.axis = SweepAxis::FS;
            else if (axis_name == "k") req.axis = SweepAxis::K;
            else if (axis_name == "lw") req.axis = SweepAxis::LW;
            else if (axis_name == "dts") req.axis = SweepAxis::DTS;
            else req.axis = SweepAxis::LPRE;
            req.values = axis_values;
            req.base_detector = detector_from(o);
            for (const auto& s : sweep_scenarios) req.scenarios.push_back(s[0]);
            for (int i = 0; i < n_seeds; ++i) req.seeds.push_back(o.seed + i);
            req.duration_s = o.duration;
            if (o.fs > 0.0) req.f_s = o.fs;
            SweepResult res = sweep(req);
            if (req.axis == SweepAxis::LPRE) {
                emit_cre(res.cre, o);
            } else {
                emit_detection(res.detection, o);
            }
            return kExitOk;
        }

        if (cre->parsed()) {
            ScenarioConfig sc = scenario_defaults(o.scenario[0], o.seed);
            sc.duration_s = o.duration;
            std::vector<std::uint64_t> seeds;
            for (int i = 0; i < cre_seeds; ++i) seeds.push_back(o.seed + i);
            CreReport r = evaluate_cre(sc, detector_from(o), CreConfig{}, o.fs,
                                       o.lpre, seeds);
            emit_cre({r}, o);
            return kExitOk;
        }

        if (rep->parsed()) {
            AcceptanceOptions opts;
            opts.base_seed = o.seed;
            opts.quick = rep_quick;
            opts.report_dir = rep_out;
            const AcceptanceSummary summary = run_acceptance(opts, std::cout);
            return summary.all_passed ? kExitOk : kExitAcceptance;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
