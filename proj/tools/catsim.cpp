// catsim — exact simulation and verification of entanglement-teleportation
// protocols through GHZ-class and cat-like channels.
//
// Exit codes: 0 success, 1 verification/fidelity failure, 2 usage or
// configuration error.

#include "catsim/analysis.hpp"
#include "catsim/report.hpp"
#include "catsim/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace catsim;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string report_dir() {
    const char* dir = std::getenv("CATSIM_REPORT_DIR");
    return dir && *dir ? dir : ".";
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw configuration_error("cannot write to " + path);
    out << contents;
}

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !is.eof())
        throw configuration_error("grid must have the form start:stop:step, got '" + spec + "'");
    if (step <= 0 || stop < start) throw configuration_error("grid needs step > 0 and stop >= start");
    const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
    return grid;
}

struct RunArgs {
    std::string scenario_file;
    Scenario flags; // flag values layered over the scenario file
    bool protocol_set = false, n_set = false, alpha2_set = false, r_set = false;
    bool epsilon_set = false, a2_set = false, seed_set = false, enumerate_set = false;
    bool probabilistic_set = false;
    std::string out_path;
};

Scenario resolve_scenario(const RunArgs& args) {
    Scenario sc;
    if (!args.scenario_file.empty()) sc = scenario_from_file(args.scenario_file);
    if (args.protocol_set) sc.protocol = args.flags.protocol;
    if (args.n_set) sc.n_bobs = args.flags.n_bobs;
    if (args.alpha2_set) {
        sc.alpha2 = args.flags.alpha2;
        sc.alpha.reset();
        sc.beta.reset();
    }
    if (args.r_set) {
        sc.r = args.flags.r;
        sc.phi.clear();
        sc.phi_prime.clear();
    }
    if (args.epsilon_set) sc.epsilon = args.flags.epsilon;
    if (args.a2_set) sc.a2 = args.flags.a2;
    if (args.probabilistic_set) sc.probabilistic = true;
    if (args.seed_set) sc.seed = args.flags.seed;
    if (args.enumerate_set) sc.enumerate = true;
    return sc;
}

int cmd_run(const RunArgs& args) {
    const Scenario sc = resolve_scenario(args);
    const ProtocolScript script = sc.script();
    const std::vector<Branch> branches =
        sc.enumerate ? run_protocol(script, EnumerateMode{}) : run_protocol(script, SampleMode{sc.seed});

    if (!sc.enumerate) {
        std::cout << "protocol " << script.name << ", seed " << sc.seed << "\n";
        for (const auto& line : transcript_lines(branches.front().transcript)) std::cout << line << "\n";
    }

    double min_fidelity = 1.0;
    bool any_ok = false;
    for (const auto& b : branches) {
        if (b.status == BranchStatus::Ok && b.probability >= kZeroProb && b.fidelity) {
            any_ok = true;
            min_fidelity = std::min(min_fidelity, *b.fidelity);
        }
    }

    const std::string path =
        args.out_path.empty() ? report_dir() + "/run_" + sc.protocol + ".json" : args.out_path;
    write_file(path, render_run_report(sc, branches));

    for (const auto& b : branches) {
        if (!sc.enumerate) {
            std::cout << "outcome " << (b.status == BranchStatus::Ok ? "ok" : branch_status_name(b.status));
            if (b.fidelity) std::cout << ", fidelity " << format_number(*b.fidelity);
            std::cout << ", probability " << format_number(b.probability) << "\n";
        }
    }
    std::cout << "report written to " << path << "\n";

    if (!any_ok) {
        // A sampled filter-failure branch is a legitimate probabilistic outcome.
        const bool sampled_failure = !sc.enumerate && branches.size() == 1 &&
                                     branches.front().status == BranchStatus::FilterFailure;
        if (sampled_failure) {
            std::cout << "filter failed on this sample (expected with probability "
                      << format_number(branches.front().probability) << ")\n";
            return kExitOk;
        }
        std::cerr << "no completed branch produced a fidelity\n";
        return kExitFailure;
    }
    if (min_fidelity < 1.0 - 1e-10) {
        std::cerr << "fidelity check failed: min fidelity " << format_number(min_fidelity) << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_verify(const verify::Options& opts, const std::string& protocol, bool all,
               const std::string& out_path) {
    std::vector<verify::CheckResult> results;
    if (all || protocol.empty())
        results = verify::run_all_checks(opts);
    else
        results.push_back(verify::run_protocol_check(protocol, opts));

    bool ok = true;
    double min_fidelity = 1.0;
    double max_defect = 0.0;
    for (const auto& r : results) {
        ok = ok && r.passed;
        min_fidelity = std::min(min_fidelity, r.min_fidelity);
        max_defect = std::max(max_defect, r.max_probability_defect);
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "\n      " << r.detail << "  ["
                  << format_number(r.elapsed_seconds) << " s]\n";
    }
    std::cout << "summary: " << (ok ? "all checks passed" : "CHECKS FAILED")
              << ", min fidelity " << format_number(min_fidelity) << ", max probability defect "
              << format_number(max_defect) << "\n";

    if (!out_path.empty()) {
        JsonWriter w;
        w.begin_object();
        w.key("tool").value("catsim");
        w.key("command").value("verify");
        w.key("seed").value(opts.seed);
        w.key("trials").value(opts.trials);
        w.key("checks").begin_array();
        for (const auto& r : results) {
            w.begin_object();
            w.key("name").value(r.name);
            w.key("passed").value(r.passed);
            w.key("detail").value(r.detail);
            w.key("min_fidelity").value(r.min_fidelity);
            w.key("max_probability_defect").value(r.max_probability_defect);
            w.end_object();
        }
        w.end_array();
        w.key("passed").value(ok);
        w.end_object();
        write_file(out_path, w.str() + "\n");
        std::cout << "report written to " << out_path << "\n";
    }
    return ok ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator and verifier for entanglement teleportation through "
                 "GHZ-class and cat-like states"};
    app.require_subcommand(1);

    // ---- run ----
    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run one protocol (sampled transcript or full enumeration)");
    run->add_option("--scenario", run_args.scenario_file, "scenario JSON file");
    run->add_option("--protocol", run_args.flags.protocol, "ghz | ghz-class | cat")
        ->each([&](const std::string&) { run_args.protocol_set = true; });
    run->add_option("--N", run_args.flags.n_bobs, "number of Bobs (cat protocol)")
        ->each([&](const std::string&) { run_args.n_set = true; });
    run->add_option("--alpha2", run_args.flags.alpha2, "|alpha|^2 of the input state")
        ->each([&](const std::string&) { run_args.alpha2_set = true; });
    run->add_option("--r", run_args.flags.r, "overlap magnitude |<phi|phi'>| for every pair")
        ->each([&](const std::string&) { run_args.r_set = true; });
    run->add_option("--epsilon", run_args.flags.epsilon, "overlap phase")
        ->each([&](const std::string&) { run_args.epsilon_set = true; });
    run->add_option("--a2", run_args.flags.a2, "channel weight |a|^2 (!= 0.5 runs the probabilistic variant)")
        ->each([&](const std::string&) { run_args.a2_set = true; });
    run->add_flag_callback("--probabilistic", [&] { run_args.probabilistic_set = true; },
                           "force the filtering variant even for balanced weights");
    run->add_option("--seed", run_args.flags.seed, "sampling seed (default 42)")
        ->each([&](const std::string&) { run_args.seed_set = true; });
    run->add_flag_callback("--enumerate", [&] { run_args.enumerate_set = true; },
                           "enumerate every measurement branch instead of sampling");
    run->add_option("--out", run_args.out_path, "report path (default $CATSIM_REPORT_DIR/run_<protocol>.json)");

    // ---- verify ----
    verify::Options vopts;
    std::string verify_protocol, fault_name, verify_out;
    bool verify_all = false;
    auto* ver = app.add_subcommand("verify", "exhaustive verification of the protocol claims");
    ver->add_flag("--all", verify_all, "run every check (default when --protocol is absent)");
    ver->add_option("--protocol", verify_protocol, "ghz | ghz-class | cat | probabilistic");
    ver->add_option("--trials", vopts.trials, "random draws for the ghz/ghz-class checks (default 200)");
    ver->add_option("--N", vopts.cat_max_parties, "largest cat-protocol N (default 6)");
    ver->add_option("--seed", vopts.seed, "master seed (default 42)");
    ver->add_option("--inject-fault", fault_name,
                    "test hook: wrong-correction | nonlocal-gate | premature-correction");
    ver->add_option("--out", verify_out, "write a JSON verification report");

    // ---- sweep ----
    std::string sweep_protocol = "ghz-class", sweep_grid = "0:1:0.01", sweep_out;
    double sweep_r = 0.5, sweep_epsilon = 0.0;
    auto* sweep = app.add_subcommand("sweep", "entropy of the teleportable states over an |alpha|^2 grid (CSV)");
    sweep->add_option("--protocol", sweep_protocol, "ghz-class (the teleportable-set family)");
    sweep->add_option("--r", sweep_r, "overlap magnitude");
    sweep->add_option("--epsilon", sweep_epsilon, "overlap phase");
    sweep->add_option("--alpha2-grid", sweep_grid, "start:stop:step over |alpha|^2");
    sweep->add_option("--out", sweep_out, "CSV path (stdout when absent)");

    // ---- analyze ----
    std::string curve = "negativity", r_grid_spec, analyze_out;
    double analyze_r = -1.0;
    int grid_points = 101;
    auto* analyze = app.add_subcommand("analyze", "channel curves over r (CSV)");
    analyze->add_option("--curve", curve, "negativity | e-max");
    analyze->add_option("--r-grid", r_grid_spec, "start:stop:step over r");
    analyze->add_option("--r", analyze_r, "single r value instead of a grid");
    analyze->add_option("--grid-points", grid_points, "|alpha|^2 grid resolution for e-max (default 101)");
    analyze->add_option("--out", analyze_out, "CSV path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (ver->parsed()) {
            vopts.fault = verify::fault_kind_from_name(fault_name);
            return cmd_verify(vopts, verify_protocol, verify_all, verify_out);
        }
        if (sweep->parsed()) {
            if (sweep_protocol != "ghz-class" && sweep_protocol != "ghz")
                throw configuration_error("sweep supports the ghz/ghz-class teleportable set");
            if (sweep_protocol == "ghz" && sweep_r != 0.0)
                throw configuration_error("the ghz family fixes r = 0");
            const std::string csv = csv_entropy_sweep(sweep_r, sweep_epsilon, parse_grid(sweep_grid));
            if (sweep_out.empty())
                std::cout << csv;
            else {
                write_file(sweep_out, csv);
                std::cout << "CSV written to " << sweep_out << "\n";
            }
            return kExitOk;
        }
        if (analyze->parsed()) {
            std::vector<double> grid;
            if (!r_grid_spec.empty())
                grid = parse_grid(r_grid_spec);
            else if (analyze_r >= 0.0)
                grid = {analyze_r};
            else
                grid = parse_grid("0:1:0.1");
            std::string csv;
            if (curve == "negativity")
                csv = csv_negativity_curve(grid);
            else if (curve == "e-max")
                csv = csv_e_max_curve(grid, grid_points);
            else
                throw configuration_error("unknown curve '" + curve + "' (expected negativity or e-max)");
            if (analyze_out.empty())
                std::cout << csv;
            else {
                write_file(analyze_out, csv);
                std::cout << "CSV written to " << analyze_out << "\n";
            }
            return kExitOk;
        }
    } catch (const configuration_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
