#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scott/report.hpp"

namespace {

int run_check(const scott::JobSpec& job) {
    scott::ReportResult res = scott::run_job(job);
    std::ofstream out(job.out_path);
    if (!out) {
        std::cerr << "error: cannot write report to " << job.out_path << "\n";
        return scott::kExitInput;
    }
    out << res.report.dump(2) << "\n";
    switch (res.exit_code) {
        case scott::kExitOk:
            std::cout << "ok: licensed checks pass\n";
            break;
        case scott::kExitContradiction:
            std::cout << "FAILED: a licensed check did not hold\n";
            break;
        case scott::kExitUnlicensed:
            std::cout << "hypotheses not satisfied; informational report written\n";
            break;
        default:
            break;
    }
    std::cout << "report: " << job.out_path << "\n";
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scott module checker: fusion hypotheses, local criterion, "
                 "direct Brauer-quotient verification"};
    app.require_subcommand(1);

    CLI::App* check = app.add_subcommand("check", "run the checks and write a JSON report");
    scott::JobSpec job;
    std::string field_degree = "auto";
    CLI::Option* og = check->add_option("--group", job.group_file, "group file in the text format");
    CLI::Option* on = check->add_option("--named", job.named, "catalog name, e.g. alternating:4");
    og->excludes(on);
    check->add_option("--prime", job.prime, "field characteristic p")->required();
    check->add_option("--psubgroup", job.psubgroup,
                      "p-subgroup file, or 'sylow' for a Sylow subgroup (default)");
    check->add_option("--mode", job.mode, "criteria | brute | both | corollary13 | lemmas")
        ->required();
    check->add_option("--field-degree", field_degree,
                      "'auto' (GF(p)) or an explicit extension degree m for GF(p^m)");
    check->add_option("--seed", job.seed, "seed for the decomposition searches");
    check->add_option("--out", job.out_path, "path for the JSON report")->required();
    check->add_flag("--timings", job.timings,
                    "record wall-clock timings (off by default so reports are reproducible)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return scott::kExitInput;
    }

    try {
        if (field_degree != "auto") {
            uint32_t m = 0;
            for (char c : field_degree) {
                if (c < '0' || c > '9' || m > 100)
                    throw std::invalid_argument(
                        "--field-degree must be 'auto' or a positive integer");
                m = m * 10 + static_cast<uint32_t>(c - '0');
            }
            if (m == 0)
                throw std::invalid_argument("--field-degree must be 'auto' or a positive integer");
            job.field_degree = m;
        }
        return run_check(job);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scott::kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "FAILED: " << e.what() << "\n";
        return scott::kExitContradiction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scott::kExitInput;
    }
}
