#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "vk/core.hpp"

namespace vk::quad {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(double)>;
using RealFn = std::function<double(double)>;

struct IntegrationResult {
    cplx value{};
    double error_estimate{0.0};
    long evaluations{0};
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]. The interval is first
/// cut into `initial_panels` equal pieces and at every breakpoint inside
/// (a, b). Throws ConvergenceError once tol.max_evaluations is exhausted.
IntegrationResult integrate_interval(const ComplexFn& f, double a, double b, const Tolerances& tol,
                                     int initial_panels = 1, std::span<const double> breakpoints = {});

/// \int_0^\infty f(x) dx for integrands decaying at least like exp(-decay_rate x).
/// Uses the map x = L t / (1 - t), L = 1 / decay_rate.
IntegrationResult integrate_semi_infinite(const ComplexFn& f, double decay_rate, const Tolerances& tol);

/// \int_0^\infty f(x) exp(i k x - eps x) dx at a fixed regulator eps > 0,
/// with f bounded. Integrated period by period until the damping factor is
/// below the absolute tolerance.
IntegrationResult integrate_oscillatory_regulated(const ComplexFn& f, double phase_rate, double epsilon,
                                                  const Tolerances& tol);

struct RegulatorSample {
    double epsilon;
    cplx value;
};

struct Extrapolation {
    cplx value{};
    double error_estimate{0.0};
};

/// Polynomial (Neville) extrapolation of regulated values to eps -> 0. The
/// error estimate is the change from dropping the largest-eps sample.
Extrapolation extrapolate_regulator(std::span<const RegulatorSample> samples);

/// Runs a geometric eps ladder eps_j = seed |k| / 2^j through
/// integrate_oscillatory_regulated and extrapolates to eps = 0. Stops early
/// once successive extrapolants agree to tolerance.
IntegrationResult integrate_oscillatory_limit(const ComplexFn& f, double phase_rate, const Tolerances& tol);

/// n-th derivative (n in {1,2,3}) by central differences with Ridders'
/// Richardson refinement, starting from step h.
double derivative_n(const RealFn& f, double x, int n, double h);

}  // namespace vk::quad
