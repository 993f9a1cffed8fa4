#include "vk/detector_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "vk/quadrature.hpp"

namespace vk::kernels {

namespace {

constexpr cplx I{0.0, 1.0};

cplx lightcone_pair(const traj::LightCone& a, const traj::LightCone& b) {
    const cplx du = a.u - b.u;
    const cplx dv = a.v - b.v;
    return -(a.du * b.du / (du * du) + a.dv * b.dv / (dv * dv)) / (4.0 * pi);
}

traj::LightCone cone(const Trajectory& t, cplx tau) {
    return std::visit([&](const auto& tr) { return traj::light_cone(tr, tau); }, t);
}

Trajectory displaced(const Trajectory& t, double d) {
    if (const auto* acc = std::get_if<traj::AcceleratedTrajectory>(&t)) return traj::smear(*acc, d);
    const auto& in = std::get<traj::InertialTrajectory>(t);
    const double gamma = 1.0 / std::sqrt(1.0 - in.v * in.v);
    return traj::InertialTrajectory{in.v, in.x0 + d / gamma};
}

cplx smeared_two_point(const KernelSpec& spec, double tau1, double tau2) {
    const double sigma = *spec.smearing_sigma;
    static const GaussHermite gh = gauss_hermite(32);
    const cplx t1 = tau1 - 0.5 * I * spec.epsilon;
    const cplx t2 = tau2 + 0.5 * I * spec.epsilon;
    const std::size_t n = gh.nodes.size();
    std::vector<traj::LightCone> c1(n), c2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Trajectory ti = displaced(spec.trajectory, sigma * gh.nodes[i]);
        c1[i] = cone(ti, t1);
        c2[i] = cone(ti, t2);
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sum += gh.weights[i] * gh.weights[j] * lightcone_pair(c1[i], c2[j]);
    return sum / pi;
}

cplx sample_complex(const KernelSpec& spec, double tau1, double tau2) {
    if (spec.smearing_sigma && *spec.smearing_sigma > 0) return smeared_two_point(spec, tau1, tau2);
    return two_point_derivative(spec, tau1, tau2);
}

}  // namespace

void KernelSpec::validate() const {
    require(std::isfinite(epsilon) && epsilon > 0.0, "KernelSpec: epsilon must be positive");
    require(std::isfinite(coupling_lambda), "KernelSpec: coupling_lambda must be finite");
    if (smearing_sigma) {
        require(std::isfinite(*smearing_sigma) && *smearing_sigma >= 0.0, "KernelSpec: smearing_sigma must be >= 0");
        if (const auto* acc = std::get_if<traj::AcceleratedTrajectory>(&trajectory)) {
            // outermost Gauss-Hermite node of the 32-point rule is ~7.13
            const double reach = 7.2 * *smearing_sigma * acc->alpha / acc->scale;
            require(reach < 1.0, "KernelSpec: smearing width reaches the horizon (need sigma alpha < 0.138)");
        }
    }
}

cplx two_point_lightcone(const Trajectory& trajectory, double tau1, double tau2, double epsilon) {
    require(std::isfinite(epsilon) && epsilon > 0.0, "two_point_lightcone: epsilon must be positive");
    const cplx t1 = tau1 - 0.5 * I * epsilon;
    const cplx t2 = tau2 + 0.5 * I * epsilon;
    return lightcone_pair(cone(trajectory, t1), cone(trajectory, t2));
}

cplx accelerated_closed_form(double alpha, cplx z) {
    const cplx s = std::sinh(0.5 * alpha * z);
    return -(alpha * alpha / (8.0 * pi)) / (s * s);
}

cplx inertial_closed_form(cplx z) { return -(1.0 / (2.0 * pi)) / (z * z); }

cplx two_point_derivative(const KernelSpec& spec, double tau1, double tau2) {
    require(std::isfinite(spec.epsilon) && spec.epsilon > 0.0, "two_point_derivative: epsilon must be positive");
    const cplx z = (tau1 - tau2) - I * spec.epsilon;
    if (const auto* acc = std::get_if<traj::AcceleratedTrajectory>(&spec.trajectory))
        return accelerated_closed_form(acc->alpha, z);
    return inertial_closed_form(z);
}

double noise_kernel(const KernelSpec& spec, double tau1, double tau2) {
    return sample_complex(spec, tau1, tau2).real();
}

double dissipation_kernel(const KernelSpec& spec, double tau1, double tau2) {
    return -sample_complex(spec, tau1, tau2).imag();
}

KernelSample sample(const KernelSpec& spec, double tau1, double tau2) {
    spec.validate();
    const cplx g = sample_complex(spec, tau1, tau2);
    return {tau1, tau2, g.real(), -g.imag(), spec.epsilon, false, 0.0};
}

KernelSample smeared_kernel(const KernelSpec& spec, double tau1, double tau2) {
    require(spec.smearing_sigma && *spec.smearing_sigma > 0, "smeared_kernel: smearing_sigma must be positive");
    return sample(spec, tau1, tau2);
}

KernelSample extrapolated_sample(const KernelSpec& spec, double tau1, double tau2, int levels) {
    spec.validate();
    require(tau1 != tau2, "extrapolated_sample: kernels are singular at coincidence");
    require(levels >= 2, "extrapolated_sample: need at least two regulator levels");
    std::vector<quad::RegulatorSample> ladder;
    KernelSpec s = spec;
    for (int j = 0; j < levels; ++j) {
        s.epsilon = spec.epsilon / std::ldexp(1.0, j);
        ladder.push_back({s.epsilon, sample_complex(s, tau1, tau2)});
    }
    const auto ex = quad::extrapolate_regulator(ladder);
    return {tau1, tau2, ex.value.real(), -ex.value.imag(), 0.0, true, ex.error_estimate};
}

double unruh_temperature(double alpha, const UnitSystem& units) {
    require(std::isfinite(alpha) && alpha > 0.0, "unruh_temperature: alpha must be positive");
    return units.hbar * alpha / (2.0 * pi * units.kB);
}

double thermal_inertial_noise(double temperature, double tau1, double tau2, double epsilon,
                              const UnitSystem& units, const Tolerances& tol) {
    require(std::isfinite(temperature) && temperature >= 0.0, "thermal_inertial_noise: temperature must be >= 0");
    require(std::isfinite(epsilon) && epsilon > 0.0, "thermal_inertial_noise: epsilon must be positive");
    const double dt = tau1 - tau2;
    const double vacuum = inertial_closed_form(dt - I * epsilon).real();
    if (temperature == 0.0) return vacuum;
    const double wT = units.kB * temperature / units.hbar;
    auto f = [&](double k) -> cplx {
        if (k == 0.0) return wT;
        return k / std::expm1(k / wT) * std::cos(k * dt) * std::exp(-epsilon * k);
    };
    Tolerances t = tol;
    t.abs_tol = std::max(tol.abs_tol, 1e-15 * std::abs(vacuum));
    const auto r = quad::integrate_semi_infinite(f, 1.0 / wT + epsilon, t);
    return vacuum + r.value.real() / pi;
}

double thermal_inertial_noise_limit(double temperature, double dtau, double epsilon_seed,
                                    const UnitSystem& units, int levels) {
    require(dtau != 0.0, "thermal_inertial_noise_limit: dtau must be nonzero");
    std::vector<quad::RegulatorSample> ladder;
    for (int j = 0; j < levels; ++j) {
        const double e = epsilon_seed / std::ldexp(1.0, j);
        ladder.push_back({e, thermal_inertial_noise(temperature, dtau, 0.0, e, units)});
    }
    return quad::extrapolate_regulator(ladder).value.real();
}

DissipationReport dissipation_equivalence_check(double alpha, const std::vector<double>& dtau_grid,
                                                double epsilon_seed) {
    require(std::isfinite(alpha) && alpha > 0.0, "dissipation_equivalence_check: alpha must be positive");
    DissipationReport rep;
    rep.grid = dtau_grid;
    KernelSpec acc{traj::AcceleratedTrajectory{alpha}, 1.0, epsilon_seed, {}};
    KernelSpec in{traj::InertialTrajectory{}, 1.0, epsilon_seed, {}};
    for (double d : dtau_grid) {
        const auto a = extrapolated_sample(acc, d, 0.0);
        const auto b = extrapolated_sample(in, d, 0.0);
        rep.max_pointwise_deviation =
            std::max(rep.max_pointwise_deviation, std::abs(a.dissipation - b.dissipation) / std::abs(b.noise));
    }

    // Pairing with an odd test function of width 1/alpha.
    const double L = 8.0 / alpha;
    const double bp[] = {0.0};
    Tolerances tol;
    tol.rel_tol = 1e-12;
    tol.abs_tol = 1e-16;
    tol.max_evaluations = 4'000'000;
    std::vector<quad::RegulatorSample> la, li;
    for (int j = 0; j < 6; ++j) {
        const double e = epsilon_seed / std::ldexp(1.0, j);
        auto pair = [&](bool accelerated) {
            auto f = [&](double t) -> cplx {
                const cplx z = t - I * e;
                const cplx g = accelerated ? accelerated_closed_form(alpha, z) : inertial_closed_form(z);
                return -g.imag() * t * std::exp(-alpha * alpha * t * t);
            };
            return quad::integrate_interval(f, -L, L, tol, 8, bp).value;
        };
        la.push_back({e, pair(true)});
        li.push_back({e, pair(false)});
    }
    const double pa = quad::extrapolate_regulator(la).value.real();
    const double pi_ = quad::extrapolate_regulator(li).value.real();
    rep.pairing_inertial = pi_;
    rep.pairing_deviation = std::abs(pa - pi_) / std::abs(pi_);
    return rep;
}

GaussHermite gauss_hermite(int n) {
    require(n >= 1 && n <= 200, "gauss_hermite: order out of range");
    GaussHermite gh;
    gh.nodes.assign(n, 0.0);
    gh.weights.assign(n, 0.0);
    const double pim4 = 1.0 / std::pow(pi, 0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * gh.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * gh.nodes[1];
        else
            z = 2.0 * z - gh.nodes[i - 2];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        gh.nodes[i] = z;
        gh.nodes[n - 1 - i] = -z;
        gh.weights[i] = 2.0 / (pp * pp);
        gh.weights[n - 1 - i] = gh.weights[i];
    }
    // ascending order
    std::reverse(gh.nodes.begin(), gh.nodes.end());
    std::reverse(gh.weights.begin(), gh.weights.end());
    return gh;
}

}  // namespace vk::kernels
