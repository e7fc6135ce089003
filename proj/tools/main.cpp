#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "vnmlab/algorithms.hpp"
#include "vnmlab/errors.hpp"
#include "vnmlab/oracles.hpp"
#include "vnmlab/trace_json.hpp"
#include "vnmlab/verify.hpp"

namespace {

int parse_mode_label(const std::string& label) {
    if (label.size() == 2 && (label[0] == '0' || label[0] == '1') &&
        (label[1] == '0' || label[1] == '1'))
        return (label[0] - '0') * 2 + (label[1] - '0');
    throw CLI::ValidationError("--k", "expected a 2-bit label: 00, 01, 10 or 11");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vnmlab: multi-register state-vector runs with JSON traces"};
    app.require_subcommand(1);

    int simon_n = 2;
    std::uint64_t simon_r = 0, simon_seed = 0;
    bool no_intermediate = false;
    CLI::App* simon = app.add_subcommand("simon", "period finding on the canonical 2-to-1 table");
    simon->add_option("--n", simon_n, "X register width")->required();
    simon->add_option("--r", simon_r, "hidden period")->required();
    simon->add_flag("--no-intermediate", no_intermediate, "skip the intermediate F measurement");
    simon->add_option("--seed", simon_seed, "measurement seed")->required();

    std::uint64_t shor_a = 0, shor_L = 0, shor_seed = 0;
    int shor_n = 4;
    CLI::App* shor = app.add_subcommand("shor", "order finding, exact-divisor instances");
    shor->add_option("--a", shor_a, "base")->required();
    shor->add_option("--L", shor_L, "modulus")->required();
    shor->add_option("--n", shor_n, "X register width")->required();
    shor->add_option("--seed", shor_seed, "measurement seed")->required();

    bool deutsch_extended = false;
    std::string deutsch_k = "00";
    std::uint64_t deutsch_seed = 0;
    CLI::App* deutsch = app.add_subcommand("deutsch", "balanced-or-not oracle game");
    deutsch->add_flag("--extended", deutsch_extended, "superpose all four modes in register K");
    deutsch->add_option("--k", deutsch_k, "2-bit mode label (ignored with --extended)");
    deutsch->add_option("--seed", deutsch_seed, "measurement/phase seed")->required();

    bool grover_extended = false;
    std::uint64_t grover_k = 0, grover_seed = 0;
    CLI::App* grover = app.add_subcommand("grover", "n=2 search, single exact iteration");
    grover->add_flag("--extended", grover_extended, "superpose all four targets in register K");
    grover->add_option("--k", grover_k, "target value (ignored with --extended)")->required();
    grover->add_option("--seed", grover_seed, "measurement/phase seed")->required();

    int report_n_min = 2, report_n_max = 10, report_seeds = 50;
    CLI::App* report = app.add_subcommand("report", "classical-vs-quantum query ledger rows");
    report->add_option("--n-min", report_n_min, "smallest register width")->required();
    report->add_option("--n-max", report_n_max, "largest register width")->required();
    report->add_option("--seeds", report_seeds, "oracles per width")->required();

    CLI::App* verify = app.add_subcommand("verify", "run every module's invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simon->parsed()) {
            vnmlab::OracleFunction oracle = vnmlab::make_xor_periodic_sequential(simon_n, simon_r);
            const vnmlab::RunTrace trace = vnmlab::simon_run(oracle, !no_intermediate, simon_seed);
            std::cout << vnmlab::trace_to_json(trace) << '\n';
        } else if (shor->parsed()) {
            const vnmlab::RunTrace trace =
                vnmlab::shor_period_run(shor_a, shor_L, shor_n, shor_seed);
            std::cout << vnmlab::trace_to_json(trace) << '\n';
        } else if (deutsch->parsed()) {
            const vnmlab::RunTrace trace =
                deutsch_extended ? vnmlab::deutsch_extended_run(deutsch_seed)
                                 : vnmlab::deutsch_standard_run(parse_mode_label(deutsch_k),
                                                                deutsch_seed);
            std::cout << vnmlab::trace_to_json(trace) << '\n';
        } else if (grover->parsed()) {
            const vnmlab::RunTrace trace = vnmlab::grover_run(grover_k, grover_extended, grover_seed);
            std::cout << vnmlab::trace_to_json(trace) << '\n';
        } else if (report->parsed()) {
            for (const vnmlab::ReportRow& row :
                 vnmlab::speedup_report(report_n_min, report_n_max, report_seeds))
                std::cout << vnmlab::report_row_to_json(row) << '\n';
        } else if (verify->parsed()) {
            bool all_pass = true;
            for (const vnmlab::CheckResult& check : vnmlab::run_all_checks()) {
                std::cout << (check.pass ? "PASS " : "FAIL ") << check.name;
                if (!check.detail.empty()) std::cout << ": " << check.detail;
                std::cout << '\n';
                all_pass = all_pass && check.pass;
            }
            if (!all_pass) return 2;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const vnmlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
