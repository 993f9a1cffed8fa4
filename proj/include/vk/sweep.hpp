#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vk/core.hpp"
#include "vk/records.hpp"

// Scenario configuration, parameter grids and batch evaluation.
namespace vk::sweep {

/// Bad configuration: unknown keys, malformed values, missing parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParamSpec {
    std::string name;
    std::vector<double> values;
};

/// "name=value", "name=v1,v2,...", "name=start:stop:count" or
/// "name=start:stop:count:log" (geometric spacing, endpoints included).
ParamSpec parse_param(const std::string& text);
/// The value part of parse_param alone.
std::vector<double> parse_values(const std::string& text);

struct RunConfig {
    std::string scenario;
    /// Declaration order; the last parameter varies fastest in the grid.
    std::vector<ParamSpec> params;
    Tolerances tol{};
    /// Empty writes to stdout.
    std::string out_path;
    std::string format{"csv"};
    int jobs{1};
    bool allow_flagged{false};
    bool timestamp{true};

    /// Replaces an existing parameter of the same name in place.
    void set_param(ParamSpec p);
    void validate() const;
};

/// key = value lines, '#' comments. Keys: scenario, out, format, jobs,
/// allow_flagged, timestamp, rel_tol, abs_tol, epsilon_regulator,
/// richardson_levels, max_evaluations and param.<name>. Errors carry
/// "<source>:<line>:".
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config_file(const std::string& path);

const std::vector<std::string>& scenario_names();

struct ParamInfo {
    std::string name;
    /// nullopt: required. NaN: optional and unset.
    std::optional<double> default_value;
    /// Output column carrying the value, and its unit.
    std::string column;
    std::string unit;
};
/// Parameters a scenario accepts (throws ConfigError for unknown scenarios).
std::vector<ParamInfo> scenario_params(const std::string& scenario);

/// Cartesian product of the grid in declaration order, defaults filled in.
std::vector<std::map<std::string, double>> expand_grid(const RunConfig& config);

struct RunResult {
    io::Table table;
    /// Points with a divergence flag or a computation error.
    int flagged_points{0};
    bool acceptance_failed{false};
};

/// `log` receives progress lines (one per acceptance criterion).
RunResult run(const RunConfig& config, const std::function<void(const std::string&)>& log = {});

enum ExitCode { exit_ok = 0, exit_config = 1, exit_flagged = 2, exit_acceptance = 3 };
int exit_code(const RunResult& result, const RunConfig& config);

}  // namespace vk::sweep
