#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace vk {

inline constexpr double pi = std::numbers::pi;

/// Raised for arguments outside an operation's domain (non-positive
/// distances, superluminal velocities, vanishing regulators, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a numerical procedure cannot meet its tolerance within the
/// evaluation budget. Never silently truncated.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The three constants the formulas use. Natural units by default; all
/// internal computation is done with c = hbar = k_B = 1 and the constants
/// are applied only when converting inputs and outputs.
struct UnitSystem {
    double c{1.0};
    double hbar{1.0};
    double kB{1.0};

    UnitSystem() = default;
    UnitSystem(double c_, double hbar_, double kB_);
};

/// Two-level atom: transition angular frequency and static ground-state
/// polarizability. Polarizability is in Gaussian units (a volume); an SI
/// value converts as alpha_gauss = alpha_SI / (4 pi eps0).
struct AtomSpec {
    double omega0{1.0};
    double alpha0{1.0};

    AtomSpec() = default;
    AtomSpec(double omega0_, double alpha0_);
};

struct Tolerances {
    double rel_tol{1e-10};
    double abs_tol{1e-14};
    /// Initial regulator as a fraction of the oscillation rate it damps.
    double epsilon_regulator{0.25};
    int richardson_levels{8};
    long max_evaluations{1'000'000};

    void validate() const;
};

/// rho = R omega0 / c
double to_dimensionless(const AtomSpec& spec, double R, const UnitSystem& units = {});
double from_dimensionless(double rho, const AtomSpec& spec, const UnitSystem& units = {});

inline void require(bool cond, const std::string& what) {
    if (!cond) throw DomainError(what);
}

}  // namespace vk
