#include "vk/trajectory.hpp"

#include <cmath>

namespace vk::traj {

using cplx = std::complex<double>;

AcceleratedTrajectory::AcceleratedTrajectory(double alpha_, double tau_origin_, double scale_)
    : alpha(alpha_), tau_origin(tau_origin_), scale(scale_) {
    require(alpha > 0, "AcceleratedTrajectory: alpha must be positive");
    require(scale > 0, "AcceleratedTrajectory: scale must be positive");
}

InertialTrajectory::InertialTrajectory(double v_, double x0_, const UnitSystem& units) : v(v_), x0(x0_) {
    require(std::abs(v) < units.c, "InertialTrajectory: |v| must be below c");
}

Event position(const AcceleratedTrajectory& traj, double tau, const UnitSystem& units) {
    const double a = traj.alpha * (tau - traj.tau_origin);
    return {traj.scale * std::sinh(a) / traj.alpha, traj.scale * units.c * std::cosh(a) / traj.alpha};
}

Event position(const InertialTrajectory& traj, double tau, const UnitSystem& units) {
    const double gamma = 1.0 / std::sqrt(1.0 - (traj.v / units.c) * (traj.v / units.c));
    return {gamma * tau, traj.x0 + gamma * traj.v * tau};
}

LightCone light_cone(const AcceleratedTrajectory& traj, cplx tau) {
    // u = -(s/alpha) e^{-alpha tau}, v = (s/alpha) e^{alpha tau}
    const cplx a = traj.alpha * (tau - traj.tau_origin);
    const cplx em = std::exp(-a);
    const cplx ep = std::exp(a);
    const double s = traj.scale;
    return {-s * em / traj.alpha, s * ep / traj.alpha, s * em, s * ep};
}

LightCone light_cone(const InertialTrajectory& traj, cplx tau, const UnitSystem& units) {
    const double beta = traj.v / units.c;
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double du = gamma * (1 - beta);
    const double dv = gamma * (1 + beta);
    const double x0 = traj.x0 / units.c;
    return {du * tau - x0, dv * tau + x0, du, dv};
}

Event boost(const Event& e, double rapidity, const UnitSystem& units) {
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    return {ch * e.t + sh * e.x / units.c, sh * units.c * e.t + ch * e.x};
}

AcceleratedTrajectory smear(const AcceleratedTrajectory& traj, double d, const UnitSystem& units) {
    const double factor = 1.0 + traj.alpha * d / (traj.scale * units.c);
    if (!(factor > 0)) throw DomainError("smear: 1 + alpha d / c must be positive (horizon crossing)");
    return AcceleratedTrajectory(traj.alpha, traj.tau_origin, traj.scale * factor);
}

double proper_acceleration(const AcceleratedTrajectory& traj, const UnitSystem& units) {
    return traj.alpha * units.c / traj.scale;
}

double proper_time_at(const AcceleratedTrajectory& traj, double t) {
    return std::asinh(traj.alpha * t / traj.scale) / traj.alpha + traj.tau_origin;
}

double doppler_frequency(double nu, double v, Propagation propagation, const UnitSystem& units) {
    require(std::abs(v) < units.c, "doppler_frequency: |v| must be below c");
    const double beta = (propagation == Propagation::co ? v : -v) / units.c;
    return nu * std::sqrt((1 - beta) / (1 + beta));
}

double redshifted_mode_phase(const AcceleratedTrajectory& traj, double nu, double tau, const UnitSystem&) {
    // cosh - sinh = e^{-x}; evaluated directly to avoid the cancellation.
    return traj.scale * nu / traj.alpha * std::exp(-traj.alpha * (tau - traj.tau_origin));
}

}  // namespace vk::traj
