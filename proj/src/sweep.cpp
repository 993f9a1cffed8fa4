#include "vk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "vk/acceptance.hpp"
#include "vk/casimir_polder.hpp"
#include "vk/cavity_scheme.hpp"
#include "vk/detector_kernels.hpp"
#include "vk/master_equation.hpp"

namespace vk::sweep {

namespace {

constexpr double unset = std::numeric_limits<double>::quiet_NaN();
constexpr double nan_ = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double number(const std::string& text, const std::string& what) {
    try {
        return io::parse_double(trim(text));
    } catch (const DomainError&) {
        throw ConfigError(what + ": '" + trim(text) + "' is not a number");
    }
}

bool boolean(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(what + ": '" + t + "' is not a boolean");
}

struct PointOut {
    std::vector<io::Cell> cells;
    std::vector<std::string> flags;
    bool divergent{false};
};

using Point = std::map<std::string, double>;
using Evaluator = std::function<PointOut(const Point&, const Tolerances&)>;

struct Scenario {
    std::string name;
    std::vector<ParamInfo> params;
    std::vector<io::Column> outputs;
    Evaluator eval;
};

const std::string K_unit = "alpha0 hbar omega0^4/(8 pi c^3)";
const std::string KF_unit = "alpha0 hbar omega0^5/(8 pi c^4)";

const AtomSpec atom{};

PointOut cp_stationary(const Point& p, const Tolerances& tol) {
    const double R = p.at("R");
    const double K = cp::energy_scale(atom);
    const auto U = cp::stationary_potential(atom, R, {}, tol);
    const auto F = cp::stationary_force(atom, R, {}, tol);
    return {{U.value / K, F.force_z / K, U.value / cp::asymptote_near(atom, R), U.value / cp::asymptote_far(atom, R),
             std::max(U.error_estimate, F.error_estimate) / K},
            {},
            false};
}

PointOut cp_moving(const Point& p, const Tolerances& tol) {
    const double R = p.at("R"), R0 = p.at("R0");
    const double K = cp::energy_scale(atom);
    const auto F = cp::moving_force(atom, R, R0, {}, tol);
    const auto U = cp::moving_potential(atom, R, R0, {}, tol);
    return {{F.force_z / K, F.stationary_part / K, F.residual_part / K, U.value / K, U.stationary_part / K,
             U.bracket_part / K, U.anchor_part / K, std::max(F.error_estimate, U.error_estimate) / K},
            {},
            false};
}

PointOut cp_transient(const Point& p, const Tolerances& tol) {
    cp::WallScenario w;
    w.R = p.at("R");
    w.R0 = w.R;
    w.V = p.at("V");
    w.t_elapsed = p.at("t");
    cp::TransientOptions opt;
    opt.k_max = p.at("k_max");
    opt.tol = tol;
    const double K = cp::energy_scale(atom);
    const auto F = cp::transient_force(atom, w, {}, opt);
    PointOut out{{F.force_z / K, F.stationary_part / K, F.transient_part / K, F.transient_part / F.stationary_part,
                  F.cutoff_sensitivity / K, F.error_estimate / K},
                 {},
                 false};
    if (F.cutoff_sensitivity > 1e-3 * std::abs(F.force_z)) out.flags.push_back("cutoff_sensitive");
    return out;
}

PointOut unruh(const Point& p, const Tolerances&) {
    const double alpha = p.at("alpha"), dtau = p.at("dtau"), tau0 = p.at("tau0");
    kernels::KernelSpec acc{traj::AcceleratedTrajectory{alpha}, 1.0, p.at("epsilon"), {}};
    if (p.at("sigma") > 0) acc.smearing_sigma = p.at("sigma");
    kernels::KernelSpec in{traj::InertialTrajectory{}, 1.0, p.at("epsilon"), {}};
    const auto s = kernels::sample(acc, tau0 + dtau, tau0);
    const auto lim = kernels::extrapolated_sample(acc, tau0 + dtau, tau0);
    const auto lin = kernels::extrapolated_sample(in, tau0 + dtau, tau0);
    const double TU = kernels::unruh_temperature(alpha);
    const double th = kernels::thermal_inertial_noise_limit(TU, dtau, p.at("epsilon"));
    return {{s.noise, s.dissipation, lim.noise, lim.dissipation, lin.noise, lin.dissipation, th,
             std::abs(lim.noise - th) / std::abs(th), TU, lim.error_estimate},
            {},
            false};
}

cavity::CavitySpec cavity_spec(const Point& p) {
    cavity::CavitySpec s;
    s.nu = p.at("nu");
    s.omega = p.at("omega");
    s.alpha = p.at("alpha");
    s.lambda_coupling = p.at("lambda");
    s.T_transit = p.at("T");
    s.injection_rate = p.at("r");
    s.velocity = p.at("v");
    s.propagation = p.at("counter") != 0 ? traj::Propagation::counter : traj::Propagation::co;
    return s;
}

void add_regime_flags(PointOut& out, const cavity::RegimeFlags& f) {
    if (f.out_of_regime) out.flags.push_back("out_of_regime");
    if (f.sudden_asymptote_warning) out.flags.push_back("sudden_asymptote_warning");
    if (f.on_resonance) {
        out.flags.push_back("on_resonance");
        out.divergent = true;
    }
}

PointOut cavity_rates(const Point& p, const Tolerances& tol) {
    const auto spec = cavity_spec(p);
    const auto R = cavity::rates(spec, tol);
    const double ratio = std::norm(R.I2) / std::norm(R.I1);
    double r_ad = nan_, r_sa = nan_, r_cv = nan_, emis = nan_;
    if (spec.alpha > 0) {
        r_ad = cavity::ratio_adiabatic(spec.omega, spec.alpha);
        r_sa = cavity::ratio_sudden_asymptotic(spec.omega, spec.alpha).value;
        emis = std::norm(R.I2) * spec.nu * spec.nu;
    } else {
        const auto cv = cavity::ratio_constant_velocity(spec.nu, spec.omega, spec.velocity, spec.T_transit,
                                                        spec.propagation);
        r_cv = cv.value;
    }
    PointOut out{{R.I1.real(), R.I1.imag(), R.I2.real(), R.I2.imag(), R.R1, R.R2, R.flags.on_resonance ? nan_ : ratio,
                  r_ad, r_sa, r_cv, emis, R.error_estimate},
                 {},
                 false};
    add_regime_flags(out, R.flags);
    return out;
}

PointOut cavity_master(const Point& p, const Tolerances& tol) {
    PointOut out;
    master::Rates rates{p.at("R1"), p.at("R2")};
    if (std::isnan(rates.R1) || std::isnan(rates.R2)) {
        for (const char* k : {"nu", "omega", "T"})
            if (std::isnan(p.at(k)))
                throw ConfigError(std::string("cavity-master needs R1 and R2, or nu, omega and T (missing ") + k + ")");
        const auto R = cavity::rates(cavity_spec(p), tol);
        add_regime_flags(out, R.flags);
        rates = {R.R1, R.R2};
    }
    const auto ss = master::steady_state_auto(rates, static_cast<int>(p.at("N_max")));
    double t_final = p.at("t_final");
    if (!(t_final > 0)) t_final = 50.0 / (rates.R1 - rates.R2);
    const auto ev = master::evolve(master::PhotonDistribution::vacuum(ss.n_max()), rates, t_final);
    const auto Tc = master::cavity_temperature(rates, std::isnan(p.at("nu")) ? 1.0 : p.at("nu"));
    out.cells = {rates.R1, rates.R2, rates.R2 / rates.R1, t_final, ev.final_state.mean(), ev.max_trace_error,
                 ss.mean(), ss.p[0], static_cast<std::int64_t>(ss.n_max()), Tc.value, Tc.printed_form};
    return out;
}

const std::vector<Scenario>& registry() {
    static const std::vector<Scenario> reg = [] {
        std::vector<Scenario> r;
        const ParamInfo R{"R", std::nullopt, "R_in_c_over_omega0", "c/omega0"};
        r.push_back({"cp-stationary",
                     {R},
                     {{"U", K_unit},
                      {"F", KF_unit},
                      {"U_over_near_limit", "1"},
                      {"U_over_far_limit", "1"},
                      {"error_estimate", K_unit}},
                     cp_stationary});
        r.push_back({"cp-moving",
                     {R, {"R0", std::nullopt, "R0_in_c_over_omega0", "c/omega0"}},
                     {{"F", KF_unit},
                      {"F_stationary", KF_unit},
                      {"F_residual", KF_unit},
                      {"U", K_unit},
                      {"U_stationary", K_unit},
                      {"U_bracket", K_unit},
                      {"U_anchor", K_unit},
                      {"error_estimate", K_unit}},
                     cp_moving});
        r.push_back({"cp-transient",
                     {R,
                      {"t", std::nullopt, "t_in_1_over_omega0", "1/omega0"},
                      {"V", 0.0, "V_in_c", "c"},
                      {"k_max", 1e3, "k_max_in_omega0_over_c", "omega0/c"}},
                     {{"F", KF_unit},
                      {"F_steady", KF_unit},
                      {"F_transient", KF_unit},
                      {"transient_over_steady", "1"},
                      {"cutoff_sensitivity", KF_unit},
                      {"error_estimate", KF_unit}},
                     cp_transient});
        r.push_back({"unruh-kernels",
                     {{"alpha", 1.0, "alpha", "1/tau"},
                      {"dtau", std::nullopt, "dtau", "tau"},
                      {"tau0", 0.0, "tau0", "tau"},
                      {"epsilon", 0.01, "epsilon", "tau"},
                      {"sigma", 0.0, "sigma", "c tau"}},
                     {{"N_eps", "1/tau^2"},
                      {"D_eps", "1/tau^2"},
                      {"N_limit", "1/tau^2"},
                      {"D_limit", "1/tau^2"},
                      {"N_inertial_limit", "1/tau^2"},
                      {"D_inertial_limit", "1/tau^2"},
                      {"N_thermal_limit", "1/tau^2"},
                      {"thermal_rel_deviation", "1"},
                      {"T_U", "hbar/(k_B tau)"},
                      {"error_estimate", "1/tau^2"}},
                     unruh});
        const std::vector<ParamInfo> cav = {{"nu", std::nullopt, "nu", "1/time"},
                                            {"omega", std::nullopt, "omega", "1/time"},
                                            {"alpha", 0.0, "alpha", "1/time"},
                                            {"lambda", 1.0, "lambda", "1/time"},
                                            {"T", std::nullopt, "T", "time"},
                                            {"r", 1.0, "r", "1/time"},
                                            {"v", 0.0, "v", "c"},
                                            {"counter", 0.0, "counter", "-"}};
        r.push_back({"cavity-rates",
                     cav,
                     {{"I1_re", "time"},
                      {"I1_im", "time"},
                      {"I2_re", "time"},
                      {"I2_im", "time"},
                      {"R1", "1/time"},
                      {"R2", "1/time"},
                      {"ratio", "1"},
                      {"ratio_adiabatic", "1"},
                      {"ratio_sudden_asymptotic", "1"},
                      {"ratio_constant_velocity", "1"},
                      {"emission_over_asymptote", "1"},
                      {"error_estimate", "1/time"}},
                     cavity_rates});
        std::vector<ParamInfo> mp = cav;
        for (auto& q : mp)
            if (!q.default_value) q.default_value = unset;
        mp.push_back({"R1", unset, "R1_in", "1/time"});
        mp.push_back({"R2", unset, "R2_in", "1/time"});
        mp.push_back({"t_final", 0.0, "t_final_in", "time"});
        mp.push_back({"N_max", 256.0, "N_max_in", "1"});
        r.push_back({"cavity-master",
                     mp,
                     {{"R1", "1/time"},
                      {"R2", "1/time"},
                      {"q", "1"},
                      {"t_final", "time"},
                      {"n_mean_evolved", "1"},
                      {"trace_error", "1"},
                      {"n_mean_steady", "1"},
                      {"p0_steady", "1"},
                      {"N_max", "1"},
                      {"T_c", "hbar/(k_B time)"},
                      {"T_c_printed_form", "hbar/(k_B time)"}},
                     cavity_master});
        r.push_back({"acceptance", {}, {}, {}});
        return r;
    }();
    return reg;
}

const Scenario& find_scenario(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return s;
    std::string known;
    for (const auto& s : registry()) known += (known.empty() ? "" : ", ") + s.name;
    throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

std::string join(const std::vector<std::string>& v, char sep) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

RunResult run_acceptance(const std::function<void(const std::string&)>& log) {
    RunResult res;
    res.table.columns = {{"id", "-"}, {"name", "-"}, {"pass", "-"}, {"seconds", "s"}, {"time_limit", "s"}, {"detail", "-"}};
    for (const auto& c : acceptance::run_all([&](const acceptance::CriterionResult& r) {
             if (log) log(acceptance::format_line(r));
         })) {
        res.table.add_row({static_cast<std::int64_t>(c.id), c.name, std::string(c.pass ? "true" : "false"), c.seconds,
                           c.time_limit, c.detail});
        if (!c.pass) res.acceptance_failed = true;
    }
    return res;
}

}  // namespace

std::vector<double> parse_values(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) throw ConfigError("empty parameter value");
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(trim(item));
        if (parts.size() < 3 || parts.size() > 4) throw ConfigError("range '" + text + "' must be start:stop:count[:log]");
        const double a = number(parts[0], "range start");
        const double b = number(parts[1], "range stop");
        const double cnt = number(parts[2], "range count");
        bool log = false;
        if (parts.size() == 4) {
            if (parts[3] == "log")
                log = true;
            else if (parts[3] != "lin")
                throw ConfigError("range spacing '" + parts[3] + "' must be log or lin");
        }
        if (!(cnt >= 1) || cnt != std::floor(cnt) || cnt > 1e7) throw ConfigError("range count must be a positive integer");
        const int n = static_cast<int>(cnt);
        if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("range limits must be finite");
        if (n == 1) {
            if (a != b) throw ConfigError("range with one point needs start == stop");
            return {a};
        }
        if (!(b > a)) throw ConfigError("range '" + text + "' must have stop > start");
        if (log && !(a > 0)) throw ConfigError("log range needs positive limits");
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) {
            const double f = static_cast<double>(i) / (n - 1);
            v[i] = log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
        }
        v.front() = a;
        v.back() = b;
        return v;
    }
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(number(item, "parameter value"));
    if (v.empty()) throw ConfigError("empty parameter list");
    return v;
}

ParamSpec parse_param(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("--param '" + text + "' must be name=value");
    const std::string name = trim(text.substr(0, eq));
    if (name.empty()) throw ConfigError("--param '" + text + "' has an empty name");
    try {
        return {name, parse_values(text.substr(eq + 1))};
    } catch (const ConfigError& e) {
        throw ConfigError("parameter " + name + ": " + e.what());
    }
}

void RunConfig::set_param(ParamSpec p) {
    for (auto& q : params)
        if (q.name == p.name) {
            q = std::move(p);
            return;
        }
    params.push_back(std::move(p));
}

void RunConfig::validate() const {
    if (scenario.empty()) throw ConfigError("no scenario given");
    const auto& s = find_scenario(scenario);
    if (format != "csv") throw ConfigError("unsupported format '" + format + "' (only csv)");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    try {
        tol.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("tolerances: ") + e.what());
    }
    for (const auto& p : params) {
        if (p.values.empty()) throw ConfigError("parameter " + p.name + " has an empty grid");
        const bool known = std::any_of(s.params.begin(), s.params.end(), [&](const auto& i) { return i.name == p.name; });
        if (!known) throw ConfigError("scenario " + scenario + " has no parameter '" + p.name + "'");
    }
    for (const auto& i : s.params) {
        if (i.default_value) continue;
        const bool given = std::any_of(params.begin(), params.end(), [&](const auto& p) { return p.name == i.name; });
        if (!given) throw ConfigError("scenario " + scenario + " requires parameter '" + i.name + "'");
    }
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "scenario")
                c.scenario = val;
            else if (key == "out")
                c.out_path = val;
            else if (key == "format")
                c.format = val;
            else if (key == "jobs")
                c.jobs = static_cast<int>(number(val, "jobs"));
            else if (key == "allow_flagged")
                c.allow_flagged = boolean(val, key);
            else if (key == "timestamp")
                c.timestamp = boolean(val, key);
            else if (key == "rel_tol")
                c.tol.rel_tol = number(val, key);
            else if (key == "abs_tol")
                c.tol.abs_tol = number(val, key);
            else if (key == "epsilon_regulator")
                c.tol.epsilon_regulator = number(val, key);
            else if (key == "richardson_levels")
                c.tol.richardson_levels = static_cast<int>(number(val, key));
            else if (key == "max_evaluations")
                c.tol.max_evaluations = static_cast<long>(number(val, key));
            else if (key.rfind("param.", 0) == 0 && key.size() > 6)
                c.set_param({key.substr(6), parse_values(val)});
            else
                throw ConfigError("unknown key '" + key + "'");
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    return parse_config(f, path);
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& s : registry()) n.push_back(s.name);
        return n;
    }();
    return names;
}

std::vector<ParamInfo> scenario_params(const std::string& scenario) { return find_scenario(scenario).params; }

std::vector<std::map<std::string, double>> expand_grid(const RunConfig& config) {
    config.validate();
    const auto& s = find_scenario(config.scenario);
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    for (const auto& i : s.params) {
        const auto it = std::find_if(config.params.begin(), config.params.end(), [&](const auto& p) { return p.name == i.name; });
        if (it == config.params.end()) axes.push_back({i.name, {*i.default_value}});
    }
    for (const auto& p : config.params) axes.push_back({p.name, p.values});
    std::vector<Point> out(1);
    for (const auto& [name, values] : axes) {
        std::vector<Point> next;
        next.reserve(out.size() * values.size());
        for (const auto& pt : out)
            for (double v : values) {
                Point q = pt;
                q[name] = v;
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

RunResult run(const RunConfig& config, const std::function<void(const std::string&)>& log) {
    config.validate();
    if (config.scenario == "acceptance") return run_acceptance(log);
    const auto& s = find_scenario(config.scenario);
    const auto points = expand_grid(config);

    RunResult res;
    for (const auto& i : s.params) res.table.columns.push_back({i.column, i.unit});
    for (const auto& c : s.outputs) res.table.columns.push_back(c);
    res.table.columns.push_back({"flags", "-"});
    res.table.columns.push_back({"errors", "-"});

    std::vector<std::vector<io::Cell>> rows(points.size());
    std::vector<char> flagged(points.size(), 0);
    auto work = [&](std::size_t k) {
        const auto& pt = points[k];
        std::vector<io::Cell> row;
        for (const auto& i : s.params) row.push_back(pt.at(i.name));
        PointOut o;
        std::string err;
        try {
            o = s.eval(pt, config.tol);
        } catch (const std::exception& e) {
            err = e.what();
        }
        if (!err.empty()) {
            o.cells.assign(s.outputs.size(), nan_);
            o.divergent = true;
        }
        row.insert(row.end(), o.cells.begin(), o.cells.end());
        row.push_back(join(o.flags, ';'));
        row.push_back(err);
        rows[k] = std::move(row);
        flagged[k] = o.divergent ? 1 : 0;
    };

    const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(points.size())));
    if (jobs == 1) {
        for (std::size_t k = 0; k < points.size(); ++k) work(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < points.size(); k = next++) work(k);
            });
        for (auto& t : pool) t.join();
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        res.table.add_row(std::move(rows[k]));
        res.flagged_points += flagged[k];
    }
    return res;
}

int exit_code(const RunResult& result, const RunConfig& config) {
    if (result.acceptance_failed) return exit_acceptance;
    if (result.flagged_points > 0 && !config.allow_flagged) return exit_flagged;
    return exit_ok;
}

}  // namespace vk::sweep
