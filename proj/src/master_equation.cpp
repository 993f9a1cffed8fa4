#include "vk/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vk::master {

PhotonDistribution::PhotonDistribution(std::vector<double> probs) : p(std::move(probs)) {
    require(!p.empty(), "PhotonDistribution: need at least one level");
}

PhotonDistribution PhotonDistribution::vacuum(int n_max) {
    require(n_max >= 0, "PhotonDistribution: N_max must be >= 0");
    std::vector<double> v(static_cast<std::size_t>(n_max) + 1, 0.0);
    v[0] = 1.0;
    return PhotonDistribution(std::move(v));
}

double PhotonDistribution::trace() const {
    // Neumaier summation so the trace check is not limited by the sum itself
    double s = 0.0, c = 0.0;
    for (double x : p) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

double PhotonDistribution::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p[n];
    return m;
}

void PhotonDistribution::validate(double tol) const {
    for (double x : p) require(std::isfinite(x) && x >= 0.0, "PhotonDistribution: probabilities must be >= 0");
    require(std::abs(trace() - 1.0) <= tol, "PhotonDistribution: probabilities must sum to 1");
}

std::vector<double> drift(const PhotonDistribution& dist, const Rates& r) {
    require(r.R1 >= 0 && r.R2 >= 0, "drift: rates must be >= 0");
    const auto& p = dist.p;
    const int N = dist.n_max();
    std::vector<double> d(p.size(), 0.0);
    // Flux form: J_n = R2 (n+1) p_n - R1 (n+1) p_{n+1} from n to n+1.
    for (int n = 0; n < N; ++n) {
        const double J = (n + 1) * (r.R2 * p[n] - r.R1 * p[n + 1]);
        d[n] -= J;
        d[n + 1] += J;
    }
    return d;
}

double max_stable_step(const Rates& r, int n_max) {
    const double rate = std::max(r.R1, r.R2) * (n_max + 1);
    require(rate > 0, "max_stable_step: rates are zero");
    return 0.1 / rate;
}

Evolution evolve(const PhotonDistribution& p0, const Rates& r, double t_final, const EvolveOptions& opt) {
    p0.validate(1e-12);
    require(std::isfinite(t_final) && t_final >= 0, "evolve: t_final must be >= 0");
    require(r.R1 >= 0 && r.R2 >= 0, "evolve: rates must be >= 0");
    Evolution out;
    out.final_state = p0;
    if (r.R1 == 0 && r.R2 == 0) {
        out.series.push_back({0.0, p0.p, p0.mean(), p0.trace()});
        return out;
    }
    const int N = p0.n_max();
    const double bound = max_stable_step(r, N);
    double dt = opt.dt > 0 ? opt.dt : bound;
    require(dt <= bound * (1 + 1e-12), "evolve: dt exceeds the stability bound 0.1/(R (N_max+1))");
    const long steps = t_final == 0 ? 0 : static_cast<long>(std::ceil(t_final / dt));
    if (steps > 0) dt = t_final / static_cast<double>(steps);
    out.dt = dt;
    out.steps = steps;

    PhotonDistribution cur = p0;
    PhotonDistribution tmp = p0;
    const std::size_t M = cur.p.size();
    auto record = [&](double t) {
        const double tr = cur.trace();
        out.max_trace_error = std::max(out.max_trace_error, std::abs(tr - 1.0));
        if (opt.record_every > 0) out.series.push_back({t, cur.p, cur.mean(), tr});
    };
    record(0.0);
    for (long s = 0; s < steps; ++s) {
        const auto k1 = drift(cur, r);
        for (std::size_t i = 0; i < M; ++i) tmp.p[i] = cur.p[i] + 0.5 * dt * k1[i];
        const auto k2 = drift(tmp, r);
        for (std::size_t i = 0; i < M; ++i) tmp.p[i] = cur.p[i] + 0.5 * dt * k2[i];
        const auto k3 = drift(tmp, r);
        for (std::size_t i = 0; i < M; ++i) tmp.p[i] = cur.p[i] + dt * k3[i];
        const auto k4 = drift(tmp, r);
        for (std::size_t i = 0; i < M; ++i) cur.p[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        for (double x : cur.p)
            if (!std::isfinite(x) || x < -1e-9) throw ConvergenceError("evolve: instability detected");
        if (opt.record_every > 0 && ((s + 1) % opt.record_every == 0 || s + 1 == steps))
            record(dt * static_cast<double>(s + 1));
        else
            out.max_trace_error = std::max(out.max_trace_error, std::abs(cur.trace() - 1.0));
    }
    // RK4 can leave components at -1e-17 where the exact value is ~0
    for (double& x : cur.p) x = std::max(x, 0.0);
    if (r.R1 > r.R2 && cur.p.back() > opt.tail_limit)
        throw ConvergenceError("evolve: truncation tail p_Nmax exceeds the limit; increase N_max");
    out.final_state = cur;
    return out;
}

PhotonDistribution steady_state(const Rates& r, int n_max) {
    require(n_max >= 0, "steady_state: N_max must be >= 0");
    require(r.R1 >= 0 && r.R2 >= 0, "steady_state: rates must be >= 0");
    if (!(r.R1 > r.R2)) throw DomainError("steady_state: R1 <= R2, no normalizable steady state");
    const double q = r.R2 / r.R1;
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
    // 1 - q^{N+1} via expm1 keeps precision for q near 1
    const double norm = (1.0 - q) / -std::expm1((n_max + 1) * std::log(q));
    double qn = 1.0;
    for (auto& x : p) {
        x = norm * qn;
        qn *= q;
    }
    if (q == 0.0) {
        std::fill(p.begin(), p.end(), 0.0);
        p[0] = 1.0;
    }
    if (p.back() >= 1e-10 && n_max > 0)
        throw ConvergenceError("steady_state: tail p_Nmax >= 1e-10, N_max too small");
    return PhotonDistribution(std::move(p));
}

PhotonDistribution steady_state_auto(const Rates& r, int n_start, int n_limit) {
    for (int n = n_start; n <= n_limit; n *= 2) {
        try {
            return steady_state(r, n);
        } catch (const ConvergenceError&) {
        }
    }
    throw ConvergenceError("steady_state_auto: tail criterion not met below N_max limit");
}

CavityTemperature cavity_temperature(const Rates& r, double nu, const UnitSystem& units) {
    require(nu > 0, "cavity_temperature: nu must be positive");
    require(r.R1 >= 0 && r.R2 >= 0, "cavity_temperature: rates must be >= 0");
    CavityTemperature out;
    out.note = "printed_form = (hbar nu/k_B) ln(R1/R2) is not Boltzmann-consistent; value is used";
    if (r.R2 == 0.0) {
        require(r.R1 > 0, "cavity_temperature: both rates vanish");
        out.value = 0.0;
        out.printed_form = std::numeric_limits<double>::infinity();
        return out;
    }
    if (!(r.R1 > r.R2)) throw DomainError("cavity_temperature: R1 <= R2, no thermal steady state");
    const double L = std::log(r.R1 / r.R2);
    out.value = units.hbar * nu / (units.kB * L);
    out.printed_form = units.hbar * nu / units.kB * L;
    return out;
}

}  // namespace vk::master
