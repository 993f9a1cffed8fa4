#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "vk/core.hpp"
#include "vk/trajectory.hpp"

// Noise and dissipation kernels of a detector coupled to d(phi)/d(tau) of a
// massless scalar field in 1+1 dimensions, Minkowski vacuum. Natural units
// (c = hbar = k_B = 1) throughout; temperatures go through UnitSystem.
//
// Kernels are reported without the coupling: consumers multiply by lambda^2.
namespace vk::kernels {

using cplx = std::complex<double>;
using Trajectory = std::variant<traj::AcceleratedTrajectory, traj::InertialTrajectory>;

struct KernelSpec {
    Trajectory trajectory{traj::InertialTrajectory{}};
    double coupling_lambda{1.0};
    /// Short-distance regulator: proper times are displaced to
    /// tau1 - i eps/2 and tau2 + i eps/2.
    double epsilon{0.01};
    std::optional<double> smearing_sigma{};

    void validate() const;
};

struct KernelSample {
    double tau1{0.0};
    double tau2{0.0};
    double noise{0.0};
    double dissipation{0.0};
    double epsilon{0.0};
    bool extrapolated{false};
    double error_estimate{0.0};
};

/// Wightman function <d phi/d tau1  d phi/d tau2> from the light-cone
/// decomposition -(1/4 pi)[u1' u2' / (u1-u2)^2 + v1' v2' / (v1-v2)^2],
/// evaluated on the worldline at complex proper times.
cplx two_point_lightcone(const Trajectory& trajectory, double tau1, double tau2, double epsilon);

/// -(alpha^2 / 8 pi) / sinh^2(alpha z / 2), z = tau1 - tau2 - i eps (complex z allowed).
cplx accelerated_closed_form(double alpha, cplx z);
/// -(1 / 2 pi) / z^2
cplx inertial_closed_form(cplx z);

/// Production route: the closed forms above.
cplx two_point_derivative(const KernelSpec& spec, double tau1, double tau2);

double noise_kernel(const KernelSpec& spec, double tau1, double tau2);
double dissipation_kernel(const KernelSpec& spec, double tau1, double tau2);

/// Kernel pair at spec.epsilon, smeared when spec.smearing_sigma > 0.
KernelSample sample(const KernelSpec& spec, double tau1, double tau2);

/// Kernels averaged over worldlines at proper distances d, d' with weight
/// exp(-d^2/sigma^2) each (32-point Gauss-Hermite in each variable).
/// Requires smearing_sigma > 0.
KernelSample smeared_kernel(const KernelSpec& spec, double tau1, double tau2);

/// Repeats `sample` on eps_j = spec.epsilon / 2^j and extrapolates to eps -> 0.
/// Requires tau1 != tau2 (the kernels are distributions at coincidence).
KernelSample extrapolated_sample(const KernelSpec& spec, double tau1, double tau2, int levels = 6);

/// hbar alpha / (2 pi k_B)
double unruh_temperature(double alpha, const UnitSystem& units = {});

/// Noise kernel of a static inertial detector in a thermal field state.
/// Vacuum part in closed form plus the Bose-Einstein mode integral
/// (1/pi) \int_0^\infty k n(k) cos(k dtau) e^{-eps k} dk.
double thermal_inertial_noise(double temperature, double tau1, double tau2, double epsilon,
                              const UnitSystem& units = {}, const Tolerances& tol = {});

/// thermal_inertial_noise on the eps ladder, extrapolated to eps -> 0.
double thermal_inertial_noise_limit(double temperature, double dtau, double epsilon_seed,
                                    const UnitSystem& units = {}, int levels = 6);

struct DissipationReport {
    /// max over the grid of |D_acc - D_inertial| / |N_inertial| after eps -> 0.
    double max_pointwise_deviation{0.0};
    /// |<D_acc, f> - <D_inertial, f>| / |<D_inertial, f>| for f = t exp(-t^2 alpha^2),
    /// after eps -> 0. Both kernels are distributions supported at coincidence.
    double pairing_deviation{0.0};
    double pairing_inertial{0.0};
    std::vector<double> grid;
};

DissipationReport dissipation_equivalence_check(double alpha, const std::vector<double>& dtau_grid,
                                                double epsilon_seed = 0.01);

/// Gauss-Hermite nodes and weights for weight exp(-x^2) (Newton on the
/// three-term recurrence).
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

}  // namespace vk::kernels
