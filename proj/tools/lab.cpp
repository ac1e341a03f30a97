// lab: command-line driver for the built-in scenarios.
//
//   lab list
//   lab run <scenario> [--config <path>] [--set key=value ...] [--out <dir>]
//
// Exit status: 0 all checks pass, 1 some check fails, 2 usage error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semilab/errors.hpp"
#include "semilab/runner.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int list_scenarios() {
    std::size_t width = 0;
    for (const auto& s : semilab::scenario_catalog()) width = std::max(width, s.id.size());
    for (const auto& s : semilab::scenario_catalog()) {
        std::printf("%-*s  %.*s\n", static_cast<int>(width), std::string(s.id).c_str(),
                    static_cast<int>(s.summary.size()), s.summary.data());
    }
    return kPass;
}

int run(const std::string& scenario, const std::string& config_path,
        const std::vector<std::string>& sets, const std::string& out) {
    semilab::ScenarioConfig cfg = semilab::parse_config(config_path, sets);
    cfg.scenario_id = scenario;
    if (!out.empty()) cfg.out_dir = out;

    const semilab::ScenarioResult res = semilab::run_scenario(cfg);
    for (const auto& r : res.rows) {
        std::printf("%-4s %-44s measured=%-12.6g bound=%.6g\n", r.pass ? "ok" : "FAIL",
                    r.check_name.c_str(), r.measured, r.bound);
    }
    std::printf("%s: %s in %.2f s -> %s\n", res.scenario_id.c_str(), res.overall ? "pass" : "FAIL",
                res.wall_time, (cfg.out_dir / res.scenario_id).string().c_str());
    return res.overall ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments for convex monotone semigroups"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the scenario catalog");

    auto* run_cmd = app.add_subcommand("run", "Run one scenario and write its CSV files");
    std::string scenario;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out;
    run_cmd->add_option("scenario", scenario, "Scenario id (see `lab list`)")->required();
    run_cmd->add_option("--config", config_path, "File of `key = value` lines");
    run_cmd->add_option("--set", sets, "Override as key=value (repeatable)");
    run_cmd->add_option("--out", out, "Output directory (default lab_out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*list) return list_scenarios();
        return run(scenario, config_path, sets, out);
    } catch (const semilab::UsageError& e) {
        std::cerr << "lab: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "lab: " << e.what() << "\n";
        return kUsage;
    }
}
