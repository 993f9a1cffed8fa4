#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vk/core.hpp"

// Pauli master equation for the cavity photon number distribution:
//   dp_n/dt = -R2 [(n+1) p_n - n p_{n-1}] - R1 [n p_n - (n+1) p_{n+1}]
namespace vk::master {

struct PhotonDistribution {
    /// p[n], n = 0..N_max
    std::vector<double> p;

    PhotonDistribution() = default;
    explicit PhotonDistribution(std::vector<double> probs);
    static PhotonDistribution vacuum(int n_max);

    int n_max() const { return static_cast<int>(p.size()) - 1; }
    double trace() const;
    double mean() const;
    /// Throws unless p_n >= 0 and |sum p - 1| <= tol.
    void validate(double tol = 1e-12) const;
};

struct Rates {
    double R1{0.0};
    double R2{0.0};
};

/// The emission term into N_max + 1 is dropped together with its loss from
/// N_max, so the truncated chain conserves probability exactly.
std::vector<double> drift(const PhotonDistribution& p, const Rates& rates);

struct EvolveOptions {
    /// 0 selects the largest step allowed by the stability bound.
    double dt{0.0};
    /// Record every this many steps (0: only the final state).
    int record_every{0};
    /// Tail check: fail when p_{N_max} exceeds this at the end.
    double tail_limit{1e-10};
};

struct TimePoint {
    double t;
    std::vector<double> p;
    double mean;
    double trace;
};

struct Evolution {
    PhotonDistribution final_state;
    std::vector<TimePoint> series;
    double dt{0.0};
    long steps{0};
    double max_trace_error{0.0};
};

/// dt <= 0.1 / (R1 (N_max + 1)) (or R2 when larger).
double max_stable_step(const Rates& rates, int n_max);

/// Classical fourth-order Runge-Kutta.
Evolution evolve(const PhotonDistribution& p0, const Rates& rates, double t_final, const EvolveOptions& opt = {});

/// (1 - q) q^n / (1 - q^{N+1}), q = R2/R1. Throws when R1 <= R2 or when the
/// tail p_{N_max} is not below 1e-10.
PhotonDistribution steady_state(const Rates& rates, int n_max);
/// Starts at 256 and doubles N_max until the tail criterion holds.
PhotonDistribution steady_state_auto(const Rates& rates, int n_start = 256, int n_limit = 1 << 20);

struct CavityTemperature {
    /// hbar nu / (k_B ln(R1/R2)); 0 when R2 = 0.
    double value{0.0};
    /// Printed alternative (hbar nu / k_B) ln(R1/R2), kept for comparison only.
    double printed_form{0.0};
    std::string note;
};

CavityTemperature cavity_temperature(const Rates& rates, double nu, const UnitSystem& units = {});

}  // namespace vk::master
