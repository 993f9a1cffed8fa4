#pragma once

#include <complex>
#include <string>

#include "vk/core.hpp"
#include "vk/trajectory.hpp"

// Transition amplitudes of a two-level atom crossing a single-mode cavity.
// Frequencies, alpha and 1/T share one (arbitrary) time unit; velocities are
// in units of `units.c`.
namespace vk::cavity {

using cplx = std::complex<double>;

struct CavitySpec {
    double nu{1.0};
    double omega{1.0};
    /// 0 selects the constant-velocity atom.
    double alpha{0.0};
    double lambda_coupling{1.0};
    /// May be +infinity.
    double T_transit{1.0};
    double injection_rate{1.0};
    traj::Propagation propagation{traj::Propagation::co};
    /// Only used when alpha == 0.
    double velocity{0.0};

    void validate(const UnitSystem& units = {}) const;
};

enum class AmplitudeMode { full_sudden, adiabatic_past_only, window_only };

struct RegimeFlags {
    /// nu < 10 alpha or exp(-alpha T) > 0.1: the mode-in-cavity picture fails.
    bool out_of_regime{false};
    /// omega / alpha < 10 while using the sudden-switch asymptote.
    bool sudden_asymptote_warning{false};
    /// Constant-velocity resonance: the amplitude ratio has a pole.
    bool on_resonance{false};
};

struct Amplitude {
    cplx value{};
    double error_estimate{0.0};
    /// Regulator levels used (0 for direct quadrature).
    int regulator_levels{0};
};

struct TransitionRates {
    double R1{0.0};
    double R2{0.0};
    cplx I1{};
    cplx I2{};
    double error_estimate{0.0};
    RegimeFlags flags{};
};

/// full_sudden:          \int_0^T exp(i (nu/alpha) e^{-alpha tau} + i omega tau - alpha tau) d tau
/// adiabatic_past_only:  the same integrand over (-inf, T], in u = e^{-alpha tau}
///                       with e^{-eps u} and eps -> 0 extrapolation
/// window_only:          past(T) - past(0), the regulated form of full_sudden
/// adiabatic_past(upper) is the (-inf, upper] integral with I1's sign of omega
/// given explicitly.
Amplitude amplitude_I1(const CavitySpec& spec, AmplitudeMode mode, const Tolerances& tol = {});
Amplitude amplitude_I2(const CavitySpec& spec, AmplitudeMode mode, const Tolerances& tol = {});
Amplitude adiabatic_past(const CavitySpec& spec, double upper, double signed_omega, const Tolerances& tol = {});

/// Independent evaluation of adiabatic_past by rotating the u contour onto
/// u = a + i s.
cplx adiabatic_past_rotated(const CavitySpec& spec, double upper, double signed_omega, const Tolerances& tol = {});

RegimeFlags regime_flags(const CavitySpec& spec);

/// R_{1,2} = r lambda^2 |I_{1,2}|^2 with full_sudden amplitudes, or the
/// constant-velocity amplitudes when alpha == 0.
TransitionRates rates(const CavitySpec& spec, const Tolerances& tol = {}, const UnitSystem& units = {});

/// exp(-2 pi omega / alpha)
double ratio_adiabatic(double omega, double alpha);

struct FlaggedValue {
    double value{0.0};
    bool flagged{false};
    std::string note;
};

/// alpha / (2 pi omega); flagged when omega / alpha < 10.
FlaggedValue ratio_sudden_asymptotic(double omega, double alpha);

struct EmissionRate {
    double numeric{0.0};
    double asymptote{0.0};
    double ratio{0.0};
};

/// lambda^2 |I2|^2 against lambda^2 / nu^2.
EmissionRate emission_rate_sudden(const CavitySpec& spec, const Tolerances& tol = {});

/// |(nu'-w)/(nu'+w)|^2 |(1 - e^{-i(nu'+w)T}) / (1 - e^{-i(nu'-w)T})|^2, nu' Doppler shifted.
/// Flagged (value NaN) when |1 - e^{-i(nu'-w)T}| < 1e-12.
FlaggedValue ratio_constant_velocity(double nu, double omega, double v, double T,
                                     traj::Propagation propagation = traj::Propagation::co,
                                     const UnitSystem& units = {});

}  // namespace vk::cavity
