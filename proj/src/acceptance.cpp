#include "vk/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "vk/casimir_polder.hpp"
#include "vk/cavity_scheme.hpp"
#include "vk/detector_kernels.hpp"
#include "vk/master_equation.hpp"
#include "vk/quadrature.hpp"

namespace vk::acceptance {

namespace {

using cplx = std::complex<double>;

struct Check {
    bool pass{true};
    std::string detail;

    void require(bool ok, const char* fmt, double a, double b = 0.0) {
        char buf[200];
        std::snprintf(buf, sizeof buf, fmt, a, b);
        if (!detail.empty()) detail += "; ";
        detail += buf;
        if (!ok) {
            pass = false;
            detail += " FAIL";
        }
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const AtomSpec atom{};

Check near_limit() {
    Check c;
    const double R = 1e-3;
    const double r = cp::stationary_potential(atom, R).value / cp::asymptote_near(atom, R);
    c.require(r >= 0.99 && r <= 1.01, "U/U_near = %.6f at R = %g", r, R);
    return c;
}

Check far_limit() {
    Check c;
    const double R = 1e3;
    const double r = cp::stationary_potential(atom, R).value / cp::asymptote_far(atom, R);
    c.require(r >= 0.99 && r <= 1.01, "U/U_far = %.6f at R = %g", r, R);
    return c;
}

Check transient_relaxation() {
    Check c;
    const double R = 1.0;
    const double steady = cp::stationary_force(atom, R).force_z;
    double worst = 0.0;
    for (double rt : {20.0, 25.0, 35.0, 50.0, 100.0}) {
        cp::WallScenario w;
        w.R = w.R0 = R;
        w.t_elapsed = rt * 2.0 * R;
        const auto F = cp::transient_force(atom, w);
        worst = std::max(worst, rel(F.force_z, steady));
    }
    c.require(worst <= 0.01, "max |F - F_stat|/|F_stat| = %.3e for t >= 20 (2R/c)", worst);
    return c;
}

Check moving_atom() {
    Check c;
    double worst_release = 0.0;
    for (double R0 : {0.5, 1.0, 2.0}) {
        const auto F = cp::moving_force(atom, R0, R0);
        worst_release = std::max(worst_release, std::abs(F.residual_part) / std::abs(F.stationary_part));
    }
    c.require(worst_release <= 1e-10, "|F_res|/|F_stat| at R = R0: %.2e", worst_release);
    const double R0 = 1.0;
    const double inner = cp::moving_force(atom, 0.5 * R0, R0).residual_part;
    const double outer = cp::moving_force(atom, 2.0 * R0, R0).residual_part;
    c.require(inner > 0 && outer < 0, "residual toward R0: %+.3e at R0/2, %+.3e at 2 R0", inner, outer);
    double worst_grad = 0.0;
    for (double R : {0.6, 1.5, 3.0}) {
        const double F = cp::moving_force(atom, R, R0).force_z;
        const double dU = quad::derivative_n([&](double x) { return cp::moving_potential(atom, x, R0).value; }, R, 1, 0.05 * R);
        worst_grad = std::max(worst_grad, rel(-dU, F));
    }
    c.require(worst_grad <= 1e-6, "max |F + dU/dR|/|F| = %.2e", worst_grad);
    return c;
}

Check kernel_stationarity() {
    Check c;
    double worst_closed = 0.0, worst_cone = 0.0;
    for (double alpha : {1.0, 3.0}) {
        kernels::KernelSpec spec{traj::AcceleratedTrajectory{alpha}, 1.0, 0.01, {}};
        for (double t1 : {-0.8, 0.0, 0.4, 1.1})
            for (double t2 : {-0.5, 0.2, 0.9}) {
                const double a1 = t1 / alpha, a2 = t2 / alpha;
                const auto base = kernels::two_point_derivative(spec, a1, a2);
                const auto cone = kernels::two_point_lightcone(spec.trajectory, a1, a2, spec.epsilon);
                for (double s : {0.3, 0.7, 1.3}) {
                    const double sh = s / alpha;
                    const auto g = kernels::two_point_derivative(spec, a1 + sh, a2 + sh);
                    const auto gc = kernels::two_point_lightcone(spec.trajectory, a1 + sh, a2 + sh, spec.epsilon);
                    worst_closed = std::max({worst_closed, rel(g.real(), base.real()), rel(g.imag(), base.imag())});
                    worst_cone = std::max({worst_cone, rel(gc.real(), cone.real()), rel(gc.imag(), cone.imag())});
                }
            }
    }
    c.require(worst_closed <= 1e-8, "closed form shift deviation %.2e", worst_closed);
    c.require(worst_cone <= 1e-8, "light-cone route shift deviation %.2e", worst_cone);
    return c;
}

Check unruh_thermality() {
    Check c;
    double worst_n = 0.0;
    double worst_d = 0.0;
    double worst_pair = 0.0;
    for (double alpha : {1.0, 10.0}) {
        kernels::KernelSpec spec{traj::AcceleratedTrajectory{alpha}, 1.0, 0.02 / alpha, {}};
        const double TU = kernels::unruh_temperature(alpha);
        std::vector<double> grid;
        for (double d : {0.5, 1.0, 2.0}) {
            const double dt = d / alpha;
            grid.push_back(dt);
            const auto acc = kernels::extrapolated_sample(spec, dt, 0.0);
            const double th = kernels::thermal_inertial_noise_limit(TU, dt, spec.epsilon);
            worst_n = std::max(worst_n, rel(acc.noise, th));
        }
        const auto rep = kernels::dissipation_equivalence_check(alpha, grid, spec.epsilon);
        worst_d = std::max(worst_d, rep.max_pointwise_deviation);
        worst_pair = std::max(worst_pair, rep.pairing_deviation);
    }
    c.require(worst_n <= 1e-6, "N_acc vs N_thermal(T_U): %.2e", worst_n);
    c.require(worst_d <= 1e-6, "|D_acc - D_in|/|N_in|: %.2e", worst_d);
    c.require(worst_pair <= 1e-6, "D pairing with test function: %.2e", worst_pair);
    return c;
}

Check boltzmann_ratio() {
    Check c;
    double worst = 0.0;
    for (double w : {0.5, 1.0, 2.0}) {
        cavity::CavitySpec s;
        s.alpha = 1.0;
        s.omega = w;
        s.nu = 10.0;
        s.T_transit = INFINITY;
        const auto a1 = cavity::amplitude_I1(s, cavity::AmplitudeMode::adiabatic_past_only);
        const auto a2 = cavity::amplitude_I2(s, cavity::AmplitudeMode::adiabatic_past_only);
        worst = std::max(worst, rel(std::norm(a2.value) / std::norm(a1.value), cavity::ratio_adiabatic(w, 1.0)));
    }
    c.require(worst <= 1e-4, "max rel deviation from exp(-2 pi w/a): %.2e", worst);
    return c;
}

Check sudden_enhancement() {
    Check c;
    cavity::CavitySpec s;
    s.alpha = 1.0;
    s.omega = 100.0;
    s.nu = 1e4;
    s.T_transit = 20.0;
    const auto R = cavity::rates(s);
    const double target = cavity::ratio_sudden_asymptotic(s.omega, s.alpha).value;
    const double r = R.R2 / R.R1;
    c.require(rel(r, target) <= 0.15, "R2/R1 / (alpha/2 pi omega) = %.4f", r / target);
    const auto e1 = cavity::emission_rate_sudden(s);
    c.require(std::abs(e1.ratio - 1.0) <= 0.10, "lambda^2|I2|^2 / (lambda^2/nu^2) = %.4f", e1.ratio);
    cavity::CavitySpec s2 = s;
    s2.alpha = 2.0;
    const auto e2 = cavity::emission_rate_sudden(s2);
    c.require(rel(e2.numeric, e1.numeric) < 0.05, "emission change under alpha -> 2 alpha: %.2e", rel(e2.numeric, e1.numeric));
    return c;
}

Check master_equation() {
    Check c;
    const master::Rates r{1.0, 0.5};
    const int N = 96;
    // a spread-out start exercises every transition
    std::vector<double> p0(N + 1, 0.0);
    double z = 0.0;
    for (int n = 0; n <= 12; ++n) z += (p0[n] = 1.0 / (1.0 + n));
    for (auto& x : p0) x /= z;
    master::EvolveOptions opt;
    opt.record_every = 500;
    const auto ev = master::evolve(master::PhotonDistribution(p0), r, 100.0, opt);
    c.require(ev.max_trace_error <= 1e-12, "max |tr p - 1| = %.2e", ev.max_trace_error);

    const auto ss = master::steady_state(r, N);
    double worst_ratio = 0.0, worst_drift = 0.0;
    for (int n = 0; n < N; ++n) worst_ratio = std::max(worst_ratio, std::abs(ss.p[n + 1] / ss.p[n] - 0.5));
    for (double d : master::drift(ss, r)) worst_drift = std::max(worst_drift, std::abs(d));
    c.require(worst_ratio <= 1e-12 && worst_drift <= 1e-12, "steady ratio err %.2e, drift %.2e", worst_ratio, worst_drift);

    const auto ev0 = master::evolve(master::PhotonDistribution::vacuum(N), r, 100.0);
    c.require(std::abs(ev0.final_state.mean() - 1.0) <= 1e-6, "n_mean from evolution = %.9f", ev0.final_state.mean());

    double worst_T = 0.0;
    for (double q : {0.5, 0.1, 1e-3}) {
        const master::Rates rq{2.0, 2.0 * q};
        const double nu = 1.7;
        const auto T = master::cavity_temperature(rq, nu);
        worst_T = std::max(worst_T, std::abs(std::exp(-nu / T.value) - q) / q);
    }
    c.require(worst_T <= 1e-12, "Boltzmann consistency of T_c: %.2e", worst_T);
    return c;
}

Check constant_velocity() {
    Check c;
    const double w = 1.0;
    const auto zero = cavity::ratio_constant_velocity(3 * w, w, 0.0, pi / (2 * w));
    c.require(!zero.flagged && zero.value < 1e-10, "zero-numerator ratio %.2e", zero.value);
    const double nu = 1.5;
    const auto small = cavity::ratio_constant_velocity(nu, 0.5, 0.0, 1e-3 / (nu + 0.5));
    c.require(std::abs(small.value - 1.0) <= 1e-3, "T -> 0 ratio %.8f", small.value);
    double worst = 0.0;
    for (double T : {0.37, 1.9, 7.3}) {
        const double moving = cavity::ratio_constant_velocity(2.2, 0.4, 0.6, T).value;
        const double rest = cavity::ratio_constant_velocity(1.1, 0.4, 0.0, T).value;
        worst = std::max(worst, rel(moving, rest));
    }
    c.require(worst <= 1e-12, "Doppler substitution at v = 0.6c: %.2e", worst);
    return c;
}

// Brute-force mode sum \int_0^\infty dk k/(4 pi) [u1'u2' e^{-ik du} + v1'v2' e^{-ik dv}].
cplx mode_integral(const kernels::Trajectory& t, double tau1, double tau2, double eps) {
    const cplx t1{tau1, -0.5 * eps}, t2{tau2, 0.5 * eps};
    auto lc = [&](cplx tau) {
        return std::visit([&](const auto& tr) { return traj::light_cone(tr, tau); }, t);
    };
    const auto a = lc(t1), b = lc(t2);
    const cplx du = a.u - b.u, dv = a.v - b.v;
    const double decay = std::min(-du.imag(), -dv.imag());
    auto f = [&](double k) -> cplx {
        return k / (4 * pi) * (a.du * b.du * std::exp(cplx{0, -k} * du) + a.dv * b.dv * std::exp(cplx{0, -k} * dv));
    };
    Tolerances tol;
    tol.rel_tol = 1e-13;
    tol.abs_tol = 1e-15;
    tol.max_evaluations = 20'000'000;
    const double kend = 45.0 / decay;
    const double osc = std::max(std::abs(du.real()), std::abs(dv.real())) * kend / pi;
    return quad::integrate_interval(f, 0.0, kend, tol, static_cast<int>(16 + osc)).value;
}

Check oracle_agreement() {
    Check c;
    double worst_k = 0.0;
    const kernels::KernelSpec in{traj::InertialTrajectory{}, 1.0, 0.01, {}};
    const kernels::KernelSpec mv{traj::InertialTrajectory{0.4, 0.3}, 1.0, 0.01, {}};
    const kernels::KernelSpec acc{traj::AcceleratedTrajectory{1.0}, 1.0, 0.01, {}};
    for (const auto* s : {&in, &mv, &acc}) {
        for (double t2 : {0.0, 0.6}) {
            const cplx closed = kernels::two_point_derivative(*s, t2 + 1.0, t2);
            const cplx brute = mode_integral(s->trajectory, t2 + 1.0, t2, s->epsilon);
            worst_k = std::max(worst_k, std::abs(closed - brute) / std::abs(closed));
        }
    }
    c.require(worst_k <= 1e-10, "kernel closed form vs mode integral: %.2e", worst_k);

    double worst_c = 0.0;
    for (double w : {0.5, 1.0, 2.0})
        for (double T : {double(INFINITY), 3.0}) {
            cavity::CavitySpec s;
            s.alpha = 1.0;
            s.omega = w;
            s.nu = 10.0;
            s.T_transit = T;
            const auto reg = cavity::amplitude_I1(s, cavity::AmplitudeMode::adiabatic_past_only);
            const cplx rot = cavity::adiabatic_past_rotated(s, T, w);
            worst_c = std::max(worst_c, std::abs(reg.value - rot) / std::abs(rot));
        }
    c.require(worst_c <= 1e-8, "regulated I1 vs rotated contour: %.2e", worst_c);
    return c;
}

struct Entry {
    const char* name;
    double limit;
    Check (*fn)();
};

const Entry entries[criterion_count] = {
    {"Casimir-Polder near limit", 5, near_limit},
    {"Casimir-Polder far limit", 5, far_limit},
    {"transient relaxation", 60, transient_relaxation},
    {"moving atom residual force", 30, moving_atom},
    {"kernel stationarity", 10, kernel_stationarity},
    {"Unruh thermality", 30, unruh_thermality},
    {"adiabatic Boltzmann ratio", 60, boltzmann_ratio},
    {"sudden-switch enhancement", 120, sudden_enhancement},
    {"master equation", 10, master_equation},
    {"constant-velocity formula", 5, constant_velocity},
    {"oracle agreement", 60, oracle_agreement},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > criterion_count) throw std::out_of_range("acceptance criterion id must be 1..11");
    const Entry& e = entries[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = e.name;
    r.time_limit = e.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Check c = e.fn();
        r.pass = c.pass;
        r.detail = c.detail;
    } catch (const std::exception& ex) {
        r.pass = false;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.time_limit) {
        r.pass = false;
        r.detail += "; time limit exceeded";
    }
    return r;
}

std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count; ++id) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d %s (%.2f s / %.0f s): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds, r.time_limit);
    return head + r.detail;
}

}  // namespace vk::acceptance
