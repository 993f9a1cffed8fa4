// vacuum-kinetics: batch front-end over the scenario sweeps.
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vk/records.hpp"
#include "vk/sweep.hpp"

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace vk::sweep;

    CLI::App app{"Vacuum-fluctuation kinetics: Casimir-Polder, Unruh kernels, cavity rates"};
    std::string scenario;
    std::string config_path;
    std::vector<std::string> params;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    std::optional<int> jobs;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    bool allow_flagged = false;
    bool no_timestamp = false;

    std::string names;
    for (const auto& n : scenario_names()) names += (names.empty() ? "" : ", ") + n;
    app.add_option("scenario", scenario, "One of: " + names);
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--param", params, "name=value, name=v1,v2 or name=start:stop:count[:log]")->take_all();
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--format", format, "Output format (csv)");
    app.add_option("--jobs", jobs, "Concurrent grid points")->check(CLI::PositiveNumber);
    app.add_option("--rel-tol", rel_tol, "Relative quadrature tolerance");
    app.add_option("--abs-tol", abs_tol, "Absolute quadrature tolerance");
    app.add_flag("--allow-flagged", allow_flagged, "Exit 0 even when points are flagged");
    app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp comment line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (!scenario.empty()) cfg.scenario = scenario;
        for (const auto& p : params) cfg.set_param(parse_param(p));
        if (out_path) cfg.out_path = *out_path;
        if (format) cfg.format = *format;
        if (jobs) cfg.jobs = *jobs;
        if (rel_tol) cfg.tol.rel_tol = *rel_tol;
        if (abs_tol) cfg.tol.abs_tol = *abs_tol;
        if (allow_flagged) cfg.allow_flagged = true;
        if (no_timestamp) cfg.timestamp = false;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "vacuum-kinetics: configuration error: " << e.what() << '\n';
        return exit_config;
    }

    RunResult result;
    try {
        result = run(cfg, [](const std::string& line) { std::cerr << line << '\n'; });
    } catch (const ConfigError& e) {
        std::cerr << "vacuum-kinetics: configuration error: " << e.what() << '\n';
        return exit_config;
    }

    std::optional<std::string> comment;
    if (cfg.timestamp) comment = "generated " + utc_now() + " by vacuum-kinetics " + cfg.scenario;
    try {
        if (cfg.out_path.empty())
            vk::io::emit_csv(result.table, std::cout, comment);
        else
            vk::io::write_csv_file(result.table, cfg.out_path, comment);
    } catch (const std::exception& e) {
        std::cerr << "vacuum-kinetics: " << e.what() << '\n';
        return exit_config;
    }

    if (result.flagged_points > 0)
        std::cerr << "vacuum-kinetics: " << result.flagged_points << " flagged point(s)"
                  << (cfg.allow_flagged ? " (allowed)" : "") << '\n';
    return exit_code(result, cfg);
}
