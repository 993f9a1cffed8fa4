#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vk/acceptance.hpp"
#include "vk/casimir_polder.hpp"
#include "vk/cavity_scheme.hpp"
#include "vk/detector_kernels.hpp"
#include "vk/master_equation.hpp"
#include "vk/sweep.hpp"

namespace py = pybind11;
using namespace vk;

namespace {

py::object cell_to_py(const io::Cell& c) {
    return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

// {column name: list of values}, columns in table order
py::dict run_scenario(const std::string& scenario, const std::map<std::string, std::vector<double>>& params,
                      int jobs, double rel_tol, double abs_tol) {
    sweep::RunConfig cfg;
    cfg.scenario = scenario;
    for (const auto& [k, v] : params) cfg.set_param({k, v});
    cfg.jobs = jobs;
    cfg.tol.rel_tol = rel_tol;
    cfg.tol.abs_tol = abs_tol;
    sweep::RunResult r;
    {
        py::gil_scoped_release nogil;
        r = sweep::run(cfg);
    }
    py::dict out;
    for (std::size_t j = 0; j < r.table.columns.size(); ++j) {
        py::list col;
        for (const auto& row : r.table.rows) col.append(cell_to_py(row[j]));
        out[py::str(r.table.columns[j].name)] = col;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Vacuum-fluctuation kinetics: Casimir-Polder forces, detector kernels, cavity rates";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<sweep::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("scenario_names", &sweep::scenario_names);
    m.def("run", &run_scenario, py::arg("scenario"), py::arg("params"), py::arg("jobs") = 1,
          py::arg("rel_tol") = Tolerances{}.rel_tol, py::arg("abs_tol") = Tolerances{}.abs_tol,
          "Evaluate a scenario over the Cartesian grid of `params`; returns columns by name.");

    m.def(
        "stationary_potential",
        [](double R, double omega0, double alpha0) { return cp::stationary_potential(AtomSpec(omega0, alpha0), R).value; },
        py::arg("R"), py::arg("omega0") = 1.0, py::arg("alpha0") = 1.0);
    m.def(
        "stationary_force",
        [](double R, double omega0, double alpha0) { return cp::stationary_force(AtomSpec(omega0, alpha0), R).force_z; },
        py::arg("R"), py::arg("omega0") = 1.0, py::arg("alpha0") = 1.0);

    m.def(
        "noise_kernel",
        [](double alpha, double tau1, double tau2, double epsilon) {
            kernels::KernelSpec s;
            if (alpha > 0) s.trajectory = traj::AcceleratedTrajectory(alpha);
            s.epsilon = epsilon;
            return kernels::noise_kernel(s, tau1, tau2);
        },
        py::arg("alpha"), py::arg("tau1"), py::arg("tau2"), py::arg("epsilon") = 0.01,
        "alpha = 0 selects the inertial detector.");
    m.def("unruh_temperature", [](double alpha) { return kernels::unruh_temperature(alpha); }, py::arg("alpha"));

    m.def(
        "cavity_rates",
        [](double nu, double omega, double alpha, double T, double lam, double r) {
            cavity::CavitySpec s;
            s.nu = nu;
            s.omega = omega;
            s.alpha = alpha;
            s.T_transit = T;
            s.lambda_coupling = lam;
            s.injection_rate = r;
            const auto R = cavity::rates(s);
            return std::make_pair(R.R1, R.R2);
        },
        py::arg("nu"), py::arg("omega"), py::arg("alpha"), py::arg("T"), py::arg("lam") = 1.0, py::arg("r") = 1.0,
        "(R1, R2) for the sudden-switch amplitudes.");
    m.def("ratio_adiabatic", &cavity::ratio_adiabatic, py::arg("omega"), py::arg("alpha"));

    m.def(
        "steady_state",
        [](double R1, double R2, int n_max) { return master::steady_state({R1, R2}, n_max).p; },
        py::arg("R1"), py::arg("R2"), py::arg("n_max") = 256);
    m.def(
        "evolve",
        [](std::vector<double> p0, double R1, double R2, double t_final) {
            return master::evolve(master::PhotonDistribution(std::move(p0)), {R1, R2}, t_final).final_state.p;
        },
        py::arg("p0"), py::arg("R1"), py::arg("R2"), py::arg("t_final"));

    m.def(
        "acceptance",
        []() {
            std::vector<std::tuple<int, std::string, bool, std::string>> out;
            py::gil_scoped_release nogil;
            for (const auto& c : acceptance::run_all({})) out.emplace_back(c.id, c.name, c.pass, c.detail);
            return out;
        },
        "Run the acceptance criteria; returns (id, name, passed, detail) tuples.");
}
