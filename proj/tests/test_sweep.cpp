#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vk/sweep.hpp"

using namespace vk;
using namespace vk::sweep;

namespace {

RunConfig config_of(const std::string& scenario, std::vector<std::string> params) {
    RunConfig c;
    c.scenario = scenario;
    for (const auto& p : params) c.set_param(parse_param(p));
    c.timestamp = false;
    return c;
}

std::string as_csv(const RunResult& r) { return io::to_csv(r.table); }

}  // namespace

TEST_CASE("parameter value grids") {
    CHECK(parse_values("2.5") == std::vector<double>{2.5});
    CHECK(parse_values("1,2,3") == std::vector<double>{1, 2, 3});
    const auto lin = parse_values("0:1:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[2] == doctest::Approx(0.5));
    CHECK(lin.back() == 1.0);
    const auto lg = parse_values("0.01:100:5:log");
    REQUIRE(lg.size() == 5);
    CHECK(lg[0] == 0.01);
    CHECK(lg[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lg[4] == 100.0);
    CHECK_THROWS_AS(parse_values("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_values("-1:1:3:log"), ConfigError);
    CHECK_THROWS_AS(parse_values("abc"), ConfigError);
    CHECK_THROWS_AS(parse_param("novalue"), ConfigError);
    const auto p = parse_param("R=0.1:10:3:log");
    CHECK(p.name == "R");
    CHECK(p.values.size() == 3);
}

TEST_CASE("config files report line numbers") {
    std::istringstream good(
        "# comment\n"
        "scenario = cp-stationary\n"
        "param.R = 0.5,1\n"
        "rel_tol = 1e-9\n"
        "jobs = 2\n"
        "timestamp = false\n");
    const auto c = parse_config(good, "run.cfg");
    CHECK(c.scenario == "cp-stationary");
    CHECK(c.params.at(0).values.size() == 2);
    CHECK(c.tol.rel_tol == 1e-9);
    CHECK(c.jobs == 2);
    CHECK_FALSE(c.timestamp);

    std::istringstream bad("scenario = cp-stationary\n\nfrobnicate = 3\n");
    try {
        parse_config(bad, "run.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind("run.cfg:3:", 0) == 0);
    }
    std::istringstream bad_value("jobs = many\n");
    CHECK_THROWS_AS(parse_config(bad_value, "x"), ConfigError);
}

TEST_CASE("grid expansion and validation") {
    auto c = config_of("cavity-rates", {"nu=10,20", "omega=1", "T=1,2,3"});
    const auto g = expand_grid(c);
    REQUIRE(g.size() == 6);
    CHECK(g[0].at("nu") == 10);
    CHECK(g[1].at("T") == 2);
    CHECK(g[3].at("nu") == 20);
    CHECK(g[0].at("lambda") == 1.0);

    auto missing = config_of("cavity-rates", {"nu=10"});
    CHECK_THROWS_AS(expand_grid(missing), ConfigError);
    auto unknown = config_of("cavity-rates", {"nu=10", "omega=1", "T=1", "zeta=3"});
    CHECK_THROWS_AS(unknown.validate(), ConfigError);
    CHECK_THROWS_AS(scenario_params("no-such-scenario"), ConfigError);
    CHECK(std::find(scenario_names().begin(), scenario_names().end(), "acceptance") != scenario_names().end());
}

TEST_CASE("cp-stationary rows") {
    const auto r = run(config_of("cp-stationary", {"R=0.1:10:3:log"}));
    CHECK(r.table.rows.size() == 3);
    CHECK(r.table.columns[0].name == "R_in_c_over_omega0");
    CHECK(r.flagged_points == 0);
}

TEST_CASE("results do not depend on the number of jobs") {
    auto c = config_of("cavity-rates", {"nu=10,20,40", "omega=0.5,1", "alpha=1", "T=5,10"});
    const std::string one = as_csv(run(c));
    c.jobs = 4;
    CHECK(as_csv(run(c)) == one);
}

TEST_CASE("zero coupling gives zero rates") {
    const auto r = run(config_of("cavity-rates", {"nu=10", "omega=1", "alpha=1", "T=10", "lambda=0"}));
    const auto i1 = *r.table.column_index("R1");
    const auto i2 = *r.table.column_index("R2");
    CHECK(std::get<double>(r.table.rows[0][i1]) == 0.0);
    CHECK(std::get<double>(r.table.rows[0][i2]) == 0.0);
}

TEST_CASE("flagged points set the exit code") {
    auto c = config_of("cavity-rates", {"nu=3", "omega=1", "T=3.141592653589793"});
    const auto r = run(c);
    CHECK(r.flagged_points == 1);
    CHECK(exit_code(r, c) == exit_flagged);
    c.allow_flagged = true;
    CHECK(exit_code(r, c) == exit_ok);
}

TEST_CASE("cavity-master reaches the geometric state") {
    const auto r = run(config_of("cavity-master", {"R1=1", "R2=0.5"}));
    const auto ie = *r.table.column_index("n_mean_evolved");
    const auto is = *r.table.column_index("n_mean_steady");
    CHECK(std::get<double>(r.table.rows[0][ie]) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::get<double>(r.table.rows[0][is]) == doctest::Approx(1.0).epsilon(1e-12));
}
