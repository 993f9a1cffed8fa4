#pragma once

#include <complex>

#include "vk/core.hpp"

// Detector worldlines in 1+1 Minkowski space, parametrized by proper time.
namespace vk::traj {

struct Event {
    double t{0.0};
    double x{0.0};
};

/// t = alpha^-1 sinh(alpha tau), x = c alpha^-1 cosh(alpha tau), scaled by
/// `scale` (1 for the unsmeared worldline). alpha c is the proper
/// acceleration of the unscaled hyperbola.
struct AcceleratedTrajectory {
    double alpha{1.0};
    double tau_origin{0.0};
    double scale{1.0};

    AcceleratedTrajectory() = default;
    explicit AcceleratedTrajectory(double alpha_, double tau_origin_ = 0.0, double scale_ = 1.0);
};

struct InertialTrajectory {
    double v{0.0};
    double x0{0.0};

    InertialTrajectory() = default;
    InertialTrajectory(double v_, double x0_, const UnitSystem& units = {});
};

enum class Propagation { co, counter };

Event position(const AcceleratedTrajectory& traj, double tau, const UnitSystem& units = {});
Event position(const InertialTrajectory& traj, double tau, const UnitSystem& units = {});

/// Light-cone coordinates u = t - x/c, v = t + x/c along the worldline,
/// evaluated at complex proper time (used by the regulated two-point
/// functions), and their proper-time derivatives.
struct LightCone {
    std::complex<double> u, v, du, dv;
};
LightCone light_cone(const AcceleratedTrajectory& traj, std::complex<double> tau);
LightCone light_cone(const InertialTrajectory& traj, std::complex<double> tau, const UnitSystem& units = {});

/// Boost with rapidity eta along x.
Event boost(const Event& e, double rapidity, const UnitSystem& units = {});

/// Worldline at constant proper distance d from `traj`: coordinates scaled
/// by (1 + alpha d / c), proper acceleration alpha c / (1 + alpha d / c).
AcceleratedTrajectory smear(const AcceleratedTrajectory& traj, double d, const UnitSystem& units = {});

/// Proper acceleration alpha_eff c of a (possibly smeared) trajectory.
double proper_acceleration(const AcceleratedTrajectory& traj, const UnitSystem& units = {});

/// tau = alpha^-1 asinh(alpha t / scale) + tau_origin
double proper_time_at(const AcceleratedTrajectory& traj, double t);

/// nu sqrt((1 - v/c)/(1 + v/c)); v changes sign for the counter-propagating mode.
double doppler_frequency(double nu, double v, Propagation propagation, const UnitSystem& units = {});

/// Phase -nu t(tau) + (nu/c) x(tau) of the co-propagating mode seen by the
/// accelerated atom, which equals (nu/alpha) e^{-alpha tau}.
double redshifted_mode_phase(const AcceleratedTrajectory& traj, double nu, double tau,
                             const UnitSystem& units = {});

}  // namespace vk::traj
