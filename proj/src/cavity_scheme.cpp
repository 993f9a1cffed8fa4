#include "vk/cavity_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vk/quadrature.hpp"

namespace vk::cavity {

namespace {

constexpr cplx I{0.0, 1.0};

// \int_0^T e^{-i x tau} d tau = e^{-i x T / 2} T sinc(x T / 2)
cplx window(double x, double T) {
    const double h = 0.5 * x * T;
    const double sinc = std::abs(h) < 1e-8 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
    return std::exp(-I * h) * T * sinc;
}

Amplitude full_sudden(const CavitySpec& s, double w, const Tolerances& tol) {
    const double b = s.nu / s.alpha;
    // past 40/alpha the e^{-alpha tau} envelope is below 1e-17
    const double end = std::min(s.T_transit, 40.0 / s.alpha);
    auto f = [&](double tau) -> cplx {
        const double e = std::exp(-s.alpha * tau);
        return std::exp(cplx{-s.alpha * tau, b * e + w * tau});
    };
    const double phase = b * (1.0 - std::exp(-s.alpha * end)) + std::abs(w) * end;
    const int panels = static_cast<int>(std::min(1e5, 16.0 + phase / pi));
    // Each sample carries a phase rounding error of about eps * phase, and
    // \int |f| = (1 - e^{-alpha T}) / alpha, which bounds the attainable error.
    Tolerances t = tol;
    t.abs_tol = std::max(tol.abs_tol, 4 * std::numeric_limits<double>::epsilon() * phase / s.alpha);
    const auto r = quad::integrate_interval(f, 0.0, end, t, panels);
    return {r.value, r.error_estimate, 0};
}

Amplitude constant_velocity(const CavitySpec& s, double w, const UnitSystem& units) {
    require(std::isfinite(s.T_transit), "cavity: constant-velocity transit time must be finite");
    const double nup = traj::doppler_frequency(s.nu, s.velocity, s.propagation, units);
    return {window(nup - w, s.T_transit), 0.0, 0};
}

Amplitude amplitude(const CavitySpec& spec, AmplitudeMode mode, double w, const Tolerances& tol) {
    spec.validate();
    if (spec.alpha == 0.0) {
        // only the sudden window exists for an unaccelerated atom
        require(mode == AmplitudeMode::full_sudden, "cavity: alpha = 0 has no adiabatic amplitude");
        return constant_velocity(spec, w, UnitSystem{});
    }
    switch (mode) {
        case AmplitudeMode::full_sudden:
            return full_sudden(spec, w, tol);
        case AmplitudeMode::adiabatic_past_only:
            return adiabatic_past(spec, spec.T_transit, w, tol);
        case AmplitudeMode::window_only: {
            const auto hi = adiabatic_past(spec, spec.T_transit, w, tol);
            const auto lo = adiabatic_past(spec, 0.0, w, tol);
            return {hi.value - lo.value, hi.error_estimate + lo.error_estimate,
                    std::max(hi.regulator_levels, lo.regulator_levels)};
        }
    }
    throw DomainError("cavity: unknown amplitude mode");
}

}  // namespace

void CavitySpec::validate(const UnitSystem& units) const {
    require(std::isfinite(nu) && nu > 0, "CavitySpec: nu must be positive");
    require(std::isfinite(omega) && omega > 0, "CavitySpec: omega must be positive");
    require(std::isfinite(alpha) && alpha >= 0, "CavitySpec: alpha must be >= 0");
    require(std::isfinite(lambda_coupling), "CavitySpec: lambda must be finite");
    require(T_transit > 0, "CavitySpec: T_transit must be positive");
    require(std::isfinite(injection_rate) && injection_rate > 0, "CavitySpec: injection rate must be positive");
    require(std::isfinite(velocity) && std::abs(velocity) < units.c, "CavitySpec: |v| must be below c");
    if (alpha == 0.0)
        require(std::isfinite(T_transit), "CavitySpec: a constant-velocity atom needs a finite transit time");
    else
        require(propagation == traj::Propagation::co, "CavitySpec: accelerated runs use the co-propagating mode only");
}

Amplitude adiabatic_past(const CavitySpec& spec, double upper, double w, const Tolerances& tol) {
    require(spec.alpha > 0, "adiabatic_past: alpha must be positive");
    const double b = spec.nu / spec.alpha;
    const double a = std::isinf(upper) && upper > 0 ? 0.0 : std::exp(-spec.alpha * upper);
    const double ww = w / spec.alpha;
    // Head [0, X] directly in t = ln(a + x): it resolves the log-phase of
    // (a + x)^{-i w} near x = -a and holds the stationary point x = w/b - a.
    // Beyond X the phase rate stays above b/2 and the regulator takes over.
    const double X = std::max(2.0 * pi / b, 2.0 * std::abs(ww) / b);
    const double t_hi = std::log(a + X);
    const double t_lo = a > 0 ? std::log(a) : t_hi - 40.0;
    auto head = [&](double t) -> cplx {
        return std::exp(cplx{t, -ww * t + b * (std::exp(t) - a)});
    };
    const double head_phase = std::abs(ww) * (t_hi - t_lo) + b * X;
    const int panels = static_cast<int>(std::min(1e5, 16.0 + head_phase / pi));
    const auto h = quad::integrate_interval(head, t_lo, t_hi, tol, panels);
    auto tail = [&](double y) -> cplx { return std::exp(-I * ww * std::log(a + X + y)); };
    Tolerances t = tol;
    t.max_evaluations = std::max<long>(tol.max_evaluations, 20'000'000);
    const auto r = quad::integrate_oscillatory_limit(tail, b, t);
    const cplx pre = std::exp(I * b * a) / spec.alpha;
    const cplx total = h.value + std::exp(I * b * X) * r.value;
    const double err = h.error_estimate + r.error_estimate;
    return {pre * total, err / spec.alpha, tol.richardson_levels};
}

cplx adiabatic_past_rotated(const CavitySpec& spec, double upper, double w, const Tolerances& tol) {
    require(spec.alpha > 0, "adiabatic_past_rotated: alpha must be positive");
    const double b = spec.nu / spec.alpha;
    const double a = std::isinf(upper) && upper > 0 ? 0.0 : std::exp(-spec.alpha * upper);
    const double ww = w / spec.alpha;
    auto f = [&](double s) -> cplx {
        const cplx z{a, s};
        if (a == 0 && s == 0) return 0.0;
        return std::exp(-I * ww * std::log(z) - b * s);
    };
    const auto r = quad::integrate_semi_infinite(f, b, tol);
    return I * std::exp(I * b * a) * r.value / spec.alpha;
}

Amplitude amplitude_I1(const CavitySpec& spec, AmplitudeMode mode, const Tolerances& tol) {
    return amplitude(spec, mode, spec.omega, tol);
}

Amplitude amplitude_I2(const CavitySpec& spec, AmplitudeMode mode, const Tolerances& tol) {
    return amplitude(spec, mode, -spec.omega, tol);
}

RegimeFlags regime_flags(const CavitySpec& spec) {
    RegimeFlags f;
    if (spec.alpha > 0) {
        f.out_of_regime = spec.nu < 10.0 * spec.alpha || std::exp(-spec.alpha * spec.T_transit) > 0.1;
        f.sudden_asymptote_warning = spec.omega / spec.alpha < 10.0;
    }
    return f;
}

TransitionRates rates(const CavitySpec& spec, const Tolerances& tol, const UnitSystem& units) {
    spec.validate(units);
    TransitionRates out;
    out.flags = regime_flags(spec);
    Amplitude a1, a2;
    if (spec.alpha == 0.0) {
        a1 = constant_velocity(spec, spec.omega, units);
        a2 = constant_velocity(spec, -spec.omega, units);
        const double nup = traj::doppler_frequency(spec.nu, spec.velocity, spec.propagation, units);
        out.flags.on_resonance = std::abs(1.0 - std::exp(-I * (nup - spec.omega) * spec.T_transit)) < 1e-12;
    } else {
        a1 = amplitude_I1(spec, AmplitudeMode::full_sudden, tol);
        a2 = amplitude_I2(spec, AmplitudeMode::full_sudden, tol);
    }
    const double k = spec.injection_rate * spec.lambda_coupling * spec.lambda_coupling;
    out.I1 = a1.value;
    out.I2 = a2.value;
    out.R1 = k * std::norm(a1.value);
    out.R2 = k * std::norm(a2.value);
    out.error_estimate = 2.0 * k * std::max(std::abs(a1.value) * a1.error_estimate, std::abs(a2.value) * a2.error_estimate);
    return out;
}

double ratio_adiabatic(double omega, double alpha) {
    require(omega > 0 && alpha > 0, "ratio_adiabatic: omega and alpha must be positive");
    return std::exp(-2.0 * pi * omega / alpha);
}

FlaggedValue ratio_sudden_asymptotic(double omega, double alpha) {
    require(omega > 0 && alpha > 0, "ratio_sudden_asymptotic: omega and alpha must be positive");
    FlaggedValue r{alpha / (2.0 * pi * omega), false, {}};
    if (omega / alpha < 10.0) {
        r.flagged = true;
        r.note = "omega/alpha < 10: outside the sudden-switch regime";
    }
    return r;
}

EmissionRate emission_rate_sudden(const CavitySpec& spec, const Tolerances& tol) {
    const auto a2 = amplitude_I2(spec, AmplitudeMode::full_sudden, tol);
    const double l2 = spec.lambda_coupling * spec.lambda_coupling;
    EmissionRate e;
    e.numeric = l2 * std::norm(a2.value);
    e.asymptote = l2 / (spec.nu * spec.nu);
    e.ratio = std::norm(a2.value) * spec.nu * spec.nu;
    return e;
}

FlaggedValue ratio_constant_velocity(double nu, double omega, double v, double T, traj::Propagation propagation,
                                     const UnitSystem& units) {
    require(nu > 0 && omega > 0, "ratio_constant_velocity: nu and omega must be positive");
    require(std::isfinite(T) && T > 0, "ratio_constant_velocity: T must be positive and finite");
    require(std::abs(v) < units.c, "ratio_constant_velocity: |v| must be below c");
    const double nup = traj::doppler_frequency(nu, v, propagation, units);
    const double den = std::abs(1.0 - std::exp(-I * (nup - omega) * T));
    if (den < 1e-12)
        return {std::numeric_limits<double>::quiet_NaN(), true, "on-resonance divergence: (nu'-omega) T = 2 pi n"};
    // |window(x)|^2 = |1 - e^{-ixT}|^2 / x^2, written without cancellation
    const double r = std::norm(window(nup + omega, T)) / std::norm(window(nup - omega, T));
    return {r, false, {}};
}

}  // namespace vk::cavity
