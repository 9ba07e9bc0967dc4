/// @file anse_main.cpp
/// @brief Command-line driver: run, audit, report, and sweep subcommands.
///
/// Exit codes: 0 success, 2 monitor or audit failure, 3 non-finite state
/// abort, 4 configuration / artifact / I/O errors. Argument errors are
/// reported by the option parser with its own nonzero codes.

#include "anse/errors.hpp"
#include "anse/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"anse: channel-flow simulator and inequality audit harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_dir;
    std::vector<std::string> params;

    CLI::App* run = app.add_subcommand(
        "run", "integrate a configured scenario and write run artifacts");
    run->add_option("config", config_path, "JSON config file")->required();

    CLI::App* audit = app.add_subcommand(
        "audit", "Monte Carlo audit of the functional inequalities");
    audit->add_option("config", config_path, "JSON config file")->required();

    CLI::App* report = app.add_subcommand(
        "report", "summarize a finished run from its artifacts");
    report->add_option("run_dir", run_dir,
                       "directory with manifest.json and diagnostics.csv")
        ->required();

    CLI::App* sweep = app.add_subcommand(
        "sweep", "run a config once per parameter combination");
    sweep->add_option("config", config_path, "JSON config file")->required();
    sweep
        ->add_option("--param", params,
                     "dotted.key=v1,v2,... override (repeatable)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return anse::run_command(anse::parse_config(config_path));
        if (audit->parsed()) {
            std::string table;
            const int code =
                anse::audit_command(anse::parse_config(config_path), &table);
            std::fputs(table.c_str(), stdout);
            return code;
        }
        if (report->parsed()) {
            std::fputs(anse::report_command(run_dir).c_str(), stdout);
            return 0;
        }
        if (sweep->parsed()) return anse::sweep_command(config_path, params);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "anse: %s\n", e.what());
        return 4;
    }
    return 4;
}
