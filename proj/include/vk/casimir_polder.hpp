#pragma once

#include "vk/core.hpp"

// Atom-wall retardation forces and potentials for a perfectly conducting
// plane at z = 0. Positive force points away from the wall.
namespace vk::cp {

struct Quantity {
    double value{0.0};
    double error_estimate{0.0};
};

/// Atom near the wall. R is the current distance; R0 the release point
/// (moving case); V the perpendicular velocity and t_elapsed the time since
/// the coupling was switched on (transient case).
struct WallScenario {
    double R{1.0};
    double R0{1.0};
    double V{0.0};
    double t_elapsed{0.0};

    void validate(const UnitSystem& units) const;
};

/// force_z = stationary_part + residual_part + transient_part.
/// Moving atom: residual_part is the release-point pull. Transient: the
/// stationary part is the steady value and transient_part the remainder.
struct ForceResult {
    double force_z{0.0};
    double stationary_part{0.0};
    double residual_part{0.0};
    double transient_part{0.0};
    double error_estimate{0.0};
    /// Transient only: change of transient_part when the UV cutoff doubles.
    double cutoff_sensitivity{0.0};
};

struct MovingPotential {
    double value{0.0};
    double stationary_part{0.0};
    /// g(R) - g(R0): the residual bracket between the two distances.
    double bracket_part{0.0};
    /// -g'(R0)(R - R0): keeps the potential consistent with the residual
    /// force, which vanishes at the release point.
    double anchor_part{0.0};
    double error_estimate{0.0};

    double residual_part() const { return bracket_part + anchor_part; }
};

struct TransientOptions {
    /// UV cutoff exp(-k / k_max), in units of omega0 / c.
    double k_max{1e3};
    Tolerances tol{};
};

// Dimensionless kernels, rho = R omega0 / c, natural units.
namespace kernel {
/// h(rho) = G(2 rho)/rho with G(p) = \int_0^\infty e^{-p y}/(1+y^2) dy; returns h''.
Quantity stationary_h2(double rho, const Tolerances& tol = {});
/// h'''(rho)
Quantity stationary_h3(double rho, const Tolerances& tol = {});
/// n-th derivative of S(rho) = \int_0^\infty d kappa sin(2 kappa rho) / ((kappa+1) 2 kappa rho), n in 0..4
Quantity residual_s(double rho, int n, const Tolerances& tol = {});
/// Transient force in units of alpha0 hbar omega0^5 / c^4 at time theta = omega0 t.
Quantity transient(double rho, double theta, double v_over_c, double kappa_max, const Tolerances& tol = {});
}  // namespace kernel

/// alpha0 hbar omega0^4 / (8 pi c^3): converts h'' to an energy.
double energy_scale(const AtomSpec& spec, const UnitSystem& units = {});

Quantity stationary_potential(const AtomSpec& spec, double R, const UnitSystem& units = {},
                              const Tolerances& tol = {});
ForceResult stationary_force(const AtomSpec& spec, double R, const UnitSystem& units = {},
                             const Tolerances& tol = {});

/// -alpha0 hbar omega0 / (8 R^3)
double asymptote_near(const AtomSpec& spec, double R, const UnitSystem& units = {});
/// -3 alpha0 hbar c / (8 pi R^4)
double asymptote_far(const AtomSpec& spec, double R, const UnitSystem& units = {});

/// g(r) = (alpha0 hbar omega0^2 / 4 pi) (d/dr)^2 \int_0^\infty dk sin(2kr)/((kc+omega0) 2kr)
Quantity residual_potential_kernel(const AtomSpec& spec, double r, const UnitSystem& units = {},
                                   const Tolerances& tol = {});
/// g'(r)
Quantity residual_force_kernel(const AtomSpec& spec, double r, const UnitSystem& units = {},
                               const Tolerances& tol = {});

MovingPotential moving_potential(const AtomSpec& spec, double R, double R0, const UnitSystem& units = {},
                                 const Tolerances& tol = {});
ForceResult moving_force(const AtomSpec& spec, double R, double R0, const UnitSystem& units = {},
                         const Tolerances& tol = {});

ForceResult transient_force(const AtomSpec& spec, const WallScenario& scenario, const UnitSystem& units = {},
                            const TransientOptions& options = {});

}  // namespace vk::cp
