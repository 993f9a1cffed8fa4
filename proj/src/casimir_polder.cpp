#include "vk/casimir_polder.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "vk/quadrature.hpp"
#include "vk/special.hpp"

namespace vk::cp {

using quad::cplx;

void WallScenario::validate(const UnitSystem& units) const {
    require(R > 0, "WallScenario: R must be positive");
    require(R0 > 0, "WallScenario: R0 must be positive");
    require(std::abs(V) < units.c, "WallScenario: |V| must be below c");
    require(t_elapsed >= 0, "WallScenario: t_elapsed must be non-negative");
}

namespace kernel {

// With z = 2 rho y the product rule applied to (1/rho) G(2 rho) gives
//   h''  =  (2/rho^2) \int e^{-z} (2 + 2z + z^2)        / (4 rho^2 + z^2) dz
//   h''' = -(2/rho^3) \int e^{-z} (6 + 6z + 3z^2 + z^3) / (4 rho^2 + z^2) dz
Quantity stationary_h2(double rho, const Tolerances& tol) {
    require(rho > 0, "stationary potential: distance must be positive");
    const double q = 4 * rho * rho;
    auto r = quad::integrate_semi_infinite(
        [q](double z) { return cplx{std::exp(-z) * (2 + z * (2 + z)) / (q + z * z)}; }, 1.0, tol);
    const double scale = 2.0 / (rho * rho);
    return {scale * r.value.real(), scale * r.error_estimate};
}

Quantity stationary_h3(double rho, const Tolerances& tol) {
    require(rho > 0, "stationary force: distance must be positive");
    const double q = 4 * rho * rho;
    auto r = quad::integrate_semi_infinite(
        [q](double z) { return cplx{std::exp(-z) * (6 + z * (6 + z * (3 + z))) / (q + z * z)}; }, 1.0, tol);
    const double scale = 2.0 / (rho * rho * rho);
    return {-scale * r.value.real(), scale * r.error_estimate};
}

// Writing sin(2 kappa rho)/(2 kappa rho) as an oscillatory integral and
// exchanging orders gives the Laplace form
//   S^{(n)}(rho) = (-2)^n \int_0^\infty t^n e^{-2 rho t} arctan(1/t) dt,
// which is non-oscillatory and absolutely convergent for every n.
Quantity residual_s(double rho, int n, const Tolerances& tol) {
    require(rho > 0, "residual kernel: distance must be positive");
    require(n >= 0 && n <= 4, "residual kernel: derivative order must be in 0..4");
    const double two_rho = 2 * rho;
    auto r = quad::integrate_semi_infinite(
        [n, two_rho](double z) {
            return cplx{std::pow(z, n) * std::exp(-z) * std::atan(two_rho / z)};
        },
        1.0, tol);
    const double scale = (n % 2 ? -1.0 : 1.0) / (2.0 * std::pow(rho, n + 1));
    return {scale * r.value.real(), std::abs(scale) * r.error_estimate};
}

namespace {

// \int_0^\infty k^2 e^{i k beta} / (k + w) dk for Im beta > 0, written as
// w^2 [e^z E1(z) - 1/z + 1/z^2] with z = -i w beta.
cplx wave_moment(cplx beta, double w) {
    const cplx z = cplx{0, -w} * beta;
    return w * w * (special::expint_e1_scaled(z) - 1.0 / z + 1.0 / (z * z));
}

}  // namespace

// After the continuum limit and the analytic k integral, the oscillating
// part of the general force reduces to one angular integral
//   F = (1/4 pi) \int_0^1 dmu mu^3 2 Re{ i e^{i theta}  P(beta+, 1/s+) / s+
//                                      + i e^{-i theta} P(beta-, 1/s-) / s- },
//   beta+- = +-theta (1 +- mu v) - 2 mu rho,  s+- = 1 +- mu v,
// with the exponential cutoff entering as beta -> beta + i / kappa_max.
Quantity transient(double rho, double theta, double v, double kappa_max, const Tolerances& tol) {
    require(rho > 0, "transient force: distance must be positive");
    require(theta >= 0, "transient force: elapsed time must be non-negative");
    require(std::abs(v) < 1.0, "transient force: |V| must be below c");
    require(kappa_max > 0, "transient force: cutoff must be positive");
    require(rho - v * theta > 0, "transient force: initial distance R - V t must be positive");
    const double eta = 1.0 / kappa_max;
    const cplx phase_plus = std::exp(cplx{0, theta});
    const cplx phase_minus = std::conj(phase_plus);
    auto integrand = [&](double mu) -> cplx {
        const double s_plus = 1 + mu * v;
        const double s_minus = 1 - mu * v;
        const cplx beta_plus{theta * s_plus - 2 * mu * rho, eta};
        const cplx beta_minus{-theta * s_minus - 2 * mu * rho, eta};
        const cplx sum = cplx{0, 1} * (phase_plus * wave_moment(beta_plus, 1 / s_plus) / s_plus +
                                       phase_minus * wave_moment(beta_minus, 1 / s_minus) / s_minus);
        return cplx{mu * mu * mu * 2.0 * sum.real()};
    };
    std::array<double, 1> light_cone{-1.0};
    const double denom = 2 * rho - v * theta;
    if (denom > 0) light_cone[0] = theta / denom;
    auto r = quad::integrate_interval(integrand, 0.0, 1.0, tol, 16, light_cone);
    return {r.value.real() / (4 * pi), r.error_estimate / (4 * pi)};
}

}  // namespace kernel

double energy_scale(const AtomSpec& spec, const UnitSystem& u) {
    const double w = spec.omega0;
    return spec.alpha0 * u.hbar * w * w * w * w / (8 * pi * u.c * u.c * u.c);
}

namespace {
double force_scale(const AtomSpec& spec, const UnitSystem& u) {
    return energy_scale(spec, u) * spec.omega0 / u.c;
}
}  // namespace

Quantity stationary_potential(const AtomSpec& spec, double R, const UnitSystem& units, const Tolerances& tol) {
    const double rho = to_dimensionless(spec, R, units);
    const auto h2 = kernel::stationary_h2(rho, tol);
    const double K = energy_scale(spec, units);
    return {-K * h2.value, K * h2.error_estimate};
}

ForceResult stationary_force(const AtomSpec& spec, double R, const UnitSystem& units, const Tolerances& tol) {
    const double rho = to_dimensionless(spec, R, units);
    const auto h3 = kernel::stationary_h3(rho, tol);
    const double scale = force_scale(spec, units);
    ForceResult out;
    out.stationary_part = scale * h3.value;
    out.force_z = out.stationary_part;
    out.error_estimate = scale * h3.error_estimate;
    return out;
}

double asymptote_near(const AtomSpec& spec, double R, const UnitSystem& units) {
    require(R > 0, "asymptote_near: distance must be positive");
    return -spec.alpha0 * units.hbar * spec.omega0 / (8 * R * R * R);
}

double asymptote_far(const AtomSpec& spec, double R, const UnitSystem& units) {
    require(R > 0, "asymptote_far: distance must be positive");
    return -3 * spec.alpha0 * units.hbar * units.c / (8 * pi * R * R * R * R);
}

Quantity residual_potential_kernel(const AtomSpec& spec, double r, const UnitSystem& units,
                                   const Tolerances& tol) {
    const double rho = to_dimensionless(spec, r, units);
    const auto s2 = kernel::residual_s(rho, 2, tol);
    const double scale = 2 * energy_scale(spec, units);
    return {scale * s2.value, scale * s2.error_estimate};
}

Quantity residual_force_kernel(const AtomSpec& spec, double r, const UnitSystem& units, const Tolerances& tol) {
    const double rho = to_dimensionless(spec, r, units);
    const auto s3 = kernel::residual_s(rho, 3, tol);
    const double scale = 2 * force_scale(spec, units);
    return {scale * s3.value, scale * s3.error_estimate};
}

MovingPotential moving_potential(const AtomSpec& spec, double R, double R0, const UnitSystem& units,
                                 const Tolerances& tol) {
    require(R > 0 && R0 > 0, "moving_potential: R and R0 must be positive");
    MovingPotential out;
    const auto u = stationary_potential(spec, R, units, tol);
    out.stationary_part = u.value;
    out.error_estimate = u.error_estimate;
    if (R != R0) {
        const auto g = residual_potential_kernel(spec, R, units, tol);
        const auto g0 = residual_potential_kernel(spec, R0, units, tol);
        const auto dg0 = residual_force_kernel(spec, R0, units, tol);
        out.bracket_part = g.value - g0.value;
        out.anchor_part = -dg0.value * (R - R0);
        out.error_estimate += g.error_estimate + g0.error_estimate + dg0.error_estimate * std::abs(R - R0);
    }
    out.value = out.stationary_part + out.bracket_part + out.anchor_part;
    return out;
}

ForceResult moving_force(const AtomSpec& spec, double R, double R0, const UnitSystem& units,
                         const Tolerances& tol) {
    require(R > 0 && R0 > 0, "moving_force: R and R0 must be positive");
    ForceResult out = stationary_force(spec, R, units, tol);
    if (R != R0) {
        const auto dg = residual_force_kernel(spec, R, units, tol);
        const auto dg0 = residual_force_kernel(spec, R0, units, tol);
        out.residual_part = -(dg.value - dg0.value);
        out.error_estimate += dg.error_estimate + dg0.error_estimate;
    }
    out.force_z = out.stationary_part + out.residual_part;
    return out;
}

ForceResult transient_force(const AtomSpec& spec, const WallScenario& scenario, const UnitSystem& units,
                            const TransientOptions& options) {
    scenario.validate(units);
    const double rho = to_dimensionless(spec, scenario.R, units);
    const double theta = spec.omega0 * scenario.t_elapsed;
    const double v = scenario.V / units.c;
    ForceResult out = stationary_force(spec, scenario.R, units, options.tol);
    const double scale = 8 * pi * force_scale(spec, units);  // alpha0 hbar omega0^5 / c^4
    const auto tr = kernel::transient(rho, theta, v, options.k_max, options.tol);
    const auto tr2 = kernel::transient(rho, theta, v, 2 * options.k_max, options.tol);
    out.transient_part = scale * tr.value;
    out.cutoff_sensitivity = scale * std::abs(tr2.value - tr.value);
    out.error_estimate += scale * tr.error_estimate;
    out.force_z = out.stationary_part + out.transient_part;
    return out;
}

}  // namespace vk::cp
