#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semilab/gheat.hpp"
#include "semilab/gridfn.hpp"

namespace semilab {

/// Scenario parameters. Unset fields fall back to the scenario's own
/// defaults; every set field has already been validated.
struct ScenarioConfig {
    std::string scenario_id;

    std::optional<double> a;
    std::optional<double> b;
    std::optional<std::size_t> n;
    std::optional<Extension> extension;

    std::optional<std::string> semigroup;  // dilation | gheat | both
    std::optional<double> sigma_lo;
    std::optional<double> sigma_hi;
    std::optional<double> cfl;
    std::optional<std::string> method;  // fd | nisio | both
    std::optional<std::size_t> n_steps;
    std::optional<double> t;

    std::optional<double> h_max;
    std::optional<double> ratio;
    std::optional<std::size_t> count;

    std::optional<double> tol_conv;
    std::optional<double> trim;
    std::optional<double> eps;

    std::filesystem::path out_dir = "lab_out";
    bool write_artifacts = true;
};

/// Keys accepted by parse_config / apply_setting.
const std::vector<std::string_view>& config_keys();

/// Sets one `key = value` pair; UsageError names the key when it is
/// unknown or the value does not parse.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines (`#` starts a comment) from path, then applies
/// `key=value` overrides on top. An empty path skips the file.
ScenarioConfig parse_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides);

struct CheckRow {
    std::string check_name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Artifact {
    std::string name;  // written as <out>/<scenario>/<name>.csv
    std::string csv;
};

struct ScenarioResult {
    std::string scenario_id;
    std::vector<CheckRow> rows;
    std::vector<Artifact> artifacts;
    bool overall = false;
    double wall_time = 0.0;  // seconds; not part of any CSV
};

struct ScenarioInfo {
    std::string_view id;
    std::string_view summary;
};

/// The closed scenario catalog, in `lab list` order.
const std::vector<ScenarioInfo>& scenario_catalog();

/// Runs a scenario and (unless config.write_artifacts is false) writes its
/// CSV files. UsageError for unknown scenarios or invalid parameters; in that
/// case nothing is written.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// `check_name,measured,bound,pass` rows followed by an `overall` row.
std::string result_csv(const ScenarioResult& result);

/// Writes <out>/<scenario>/<artifact>.csv and result.csv; each file goes to a
/// temporary name first and is renamed into place.
void write_artifacts(const ScenarioResult& result, const std::filesystem::path& out_dir);

}  // namespace semilab
