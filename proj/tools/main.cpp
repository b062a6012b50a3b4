// Command-line front end: run a single configuration, sweep over parameter
// lists, list the scenario registry, or just validate a config file.
// Exit codes: 0 all enabled checks pass, 1 check or run failure, 2 usage or
// configuration error.

#include <CLI11.hpp>
#include <iostream>

#include "slipstream/errors.hpp"
#include "slipstream/sweep.hpp"

using namespace slipstream;

namespace {

int cmd_run(const std::string& config_path) {
    const RunConfig cfg = parse_config(config_path);
    const RunArtifacts art = run_single(cfg, cfg.output.dir);
    std::cout << "run: " << art.report.entries.size() << " checks, "
              << (art.pass ? "all passed" : "FAILED") << "\n";
    for (const auto& e : art.report.entries)
        std::cout << (e.pass ? "  [pass] " : "  [FAIL] ") << e.name << " lhs=" << e.lhs
                  << " rhs=" << e.rhs << "\n";
    if (!art.pass) {
        std::cerr << "first failed check: " << art.report.first_failure()->name << "\n";
        return 1;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path) {
    const RunConfig cfg = parse_config(config_path);
    const SweepResult res = viscosity_sweep_report(cfg, cfg.output.dir);
    std::cout << "sweep over " << res.nu_values.size() << " runs (including nu = 0), "
              << (res.pass ? "all passed" : "FAILED") << "\n";
    for (const auto& e : res.summary.entries)
        std::cout << (e.pass ? "  [pass] " : "  [FAIL] ") << e.name << " worst_ratio=" << e.lhs
                  << " allowed=" << e.rhs << "\n";
    if (!res.pass) {
        for (const auto& run : res.runs)
            if (!run.pass && run.report.first_failure()) {
                std::cerr << "first failed check: " << run.report.first_failure()->name << "\n";
                return 1;
            }
        std::cerr << "first failed check: "
                  << (res.summary.first_failure() ? res.summary.first_failure()->name : "sweep")
                  << "\n";
        return 1;
    }
    return 0;
}

int cmd_scenarios() {
    for (const auto& s : scenario_registry())
        std::cout << s.name << " - " << s.description << "\n";
    return 0;
}

int cmd_check_config(const std::string& config_path) {
    const RunConfig cfg = parse_config(config_path);
    std::cout << resolved_config_text(cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vorticity-stream-function through-flow solver and estimate harness"};
    app.require_subcommand(1);

    std::string run_cfg, sweep_cfg, check_cfg;
    CLI::App* run = app.add_subcommand("run", "execute a single run from a config file");
    run->add_option("config", run_cfg, "config file path")->required();
    CLI::App* sweep = app.add_subcommand("sweep", "execute the configured parameter sweep");
    sweep->add_option("config", sweep_cfg, "config file path")->required();
    app.add_subcommand("scenarios", "list the scenario registry");
    CLI::App* chk = app.add_subcommand("check-config", "parse and validate a config file");
    chk->add_option("config", check_cfg, "config file path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_cfg);
        if (sweep->parsed()) return cmd_sweep(sweep_cfg);
        if (chk->parsed()) return cmd_check_config(check_cfg);
        return cmd_scenarios();
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
