#include "vk/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>

namespace vk::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double error;
    double absval;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ComplexFn& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(center);
    cplx kronrod = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    double absval = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const cplx f1 = f(center - dx);
        const cplx f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        absval += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss), absval * std::abs(half)};
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

}  // namespace

IntegrationResult integrate_interval(const ComplexFn& f, double a, double b, const Tolerances& tol,
                                     int initial_panels, std::span<const double> breakpoints) {
    tol.validate();
    require(std::isfinite(a) && std::isfinite(b), "integrate_interval: limits must be finite");
    require(initial_panels >= 1, "integrate_interval: initial_panels must be >= 1");
    if (a == b) return {cplx{}, 0.0, 1};
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(initial_panels) + breakpoints.size() + 1);
    for (int i = 0; i <= initial_panels; ++i) cuts.push_back(a + (b - a) * i / initial_panels);
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.back() = b;

    std::priority_queue<Segment> active;
    std::vector<Segment> frozen;
    long evaluations = 0;
    cplx total{};
    double total_error = 0.0;
    double total_abs = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gk15(f, cuts[i], cuts[i + 1]);
        evaluations += 15;
        total += s.value;
        total_error += s.error;
        total_abs += s.absval;
        active.push(s);
    }

    // Nothing below the rounding noise of \int |f| is attainable.
    constexpr double noise = 50 * std::numeric_limits<double>::epsilon();
    auto target = [&] {
        return std::max({tol.abs_tol, tol.rel_tol * std::abs(total), noise * total_abs});
    };

    while (total_error > target() && !active.empty()) {
        if (evaluations + 30 > tol.max_evaluations) {
            throw ConvergenceError("adaptive quadrature: evaluation budget of " +
                                   std::to_string(tol.max_evaluations) + " exhausted on [" + sci(a) + ", " + sci(b) +
                                   "] (error " + sci(total_error) + ", target " + sci(target()) + ")");
        }
        Segment worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
        if (worst.b - worst.a <= 64 * std::numeric_limits<double>::epsilon() * scale) {
            // Roundoff floor: keep the segment and its error in the estimate.
            frozen.push_back(worst);
            continue;
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        total_abs += left.absval + right.absval - worst.absval;
        active.push(left);
        active.push(right);
    }

    // Re-sum to avoid drift from the incremental updates.
    cplx value{};
    double error = 0.0;
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    for (const auto& s : frozen) {
        value += s.value;
        error += s.error;
    }
    return {sign * value, error, evaluations};
}

IntegrationResult integrate_semi_infinite(const ComplexFn& f, double decay_rate, const Tolerances& tol) {
    require(decay_rate > 0 && std::isfinite(decay_rate), "integrate_semi_infinite: decay_rate must be positive");
    const double L = 1.0 / decay_rate;
    auto mapped = [&](double t) -> cplx {
        const double one_minus = 1.0 - t;
        const double x = L * t / one_minus;
        if (!std::isfinite(x)) return cplx{};
        return f(x) * (L / (one_minus * one_minus));
    };
    return integrate_interval(mapped, 0.0, 1.0, tol, 8);
}

IntegrationResult integrate_oscillatory_regulated(const ComplexFn& f, double phase_rate, double epsilon,
                                                  const Tolerances& tol) {
    require(epsilon > 0, "integrate_oscillatory_regulated: regulator epsilon must be positive");
    require(phase_rate != 0 && std::isfinite(phase_rate),
            "integrate_oscillatory_regulated: phase_rate must be nonzero");
    tol.validate();
    const double period = 2.0 * pi / std::abs(phase_rate);
    // exp(-eps x_end) ~ abs_tol * 1e-3
    const double x_end = -std::log(tol.abs_tol * 1e-3) / epsilon;
    const double periods = std::ceil(x_end / period);
    if (periods * 15 > static_cast<double>(tol.max_evaluations)) {
        throw ConvergenceError("integrate_oscillatory_regulated: regulator " + std::to_string(epsilon) +
                               " needs " + std::to_string(periods) + " periods, over budget");
    }
    auto g = [&](double x) -> cplx {
        return f(x) * std::exp(cplx{-epsilon * x, phase_rate * x});
    };
    return integrate_interval(g, 0.0, periods * period, tol, static_cast<int>(periods));
}

Extrapolation extrapolate_regulator(std::span<const RegulatorSample> samples) {
    if (samples.size() < 2) throw DomainError("extrapolate_regulator: need at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        require(samples[i].epsilon > 0, "extrapolate_regulator: regulators must be positive");
        if (i > 0)
            require(samples[i].epsilon < samples[i - 1].epsilon,
                    "extrapolate_regulator: regulators must be strictly decreasing");
    }
    // Neville tableau evaluated at eps = 0.
    auto neville = [](std::span<const RegulatorSample> s) {
        std::vector<cplx> p(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) p[i] = s[i].value;
        for (std::size_t m = 1; m < s.size(); ++m) {
            for (std::size_t i = 0; i + m < s.size(); ++i) {
                const double xi = s[i].epsilon;
                const double xj = s[i + m].epsilon;
                p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
            }
        }
        return p[0];
    };
    const cplx full = neville(samples);
    const cplx reduced = neville(samples.subspan(1));
    return {full, std::abs(full - reduced)};
}

IntegrationResult integrate_oscillatory_limit(const ComplexFn& f, double phase_rate, const Tolerances& tol) {
    tol.validate();
    std::vector<RegulatorSample> samples;
    long evaluations = 0;
    double quad_error = 0.0;
    Extrapolation best{};
    Extrapolation previous{};
    const double seed = tol.epsilon_regulator * std::abs(phase_rate);
    for (int j = 0; j < tol.richardson_levels; ++j) {
        const double eps = seed / std::ldexp(1.0, j);
        Tolerances inner = tol;
        inner.rel_tol = tol.rel_tol * 0.1;
        inner.abs_tol = tol.abs_tol * 0.1;
        auto r = integrate_oscillatory_regulated(f, phase_rate, eps, inner);
        evaluations += r.evaluations;
        quad_error = std::max(quad_error, r.error_estimate);
        samples.push_back({eps, r.value});
        if (samples.size() < 2) continue;
        best = extrapolate_regulator(samples);
        if (samples.size() >= 4) {
            const double change = std::abs(best.value - previous.value);
            const double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(best.value));
            if (change <= target && best.error_estimate <= target) {
                return {best.value, std::max(change, best.error_estimate) + quad_error, evaluations};
            }
        }
        previous = best;
    }
    return {best.value, best.error_estimate + quad_error, evaluations};
}

double derivative_n(const RealFn& f, double x, int n, double h) {
    require(n >= 1 && n <= 3, "derivative_n: order must be 1, 2 or 3");
    require(h > 0, "derivative_n: step must be positive");
    auto central = [&](double s) {
        switch (n) {
            case 1: return (f(x + s) - f(x - s)) / (2 * s);
            case 2: return (f(x + s) - 2 * f(x) + f(x - s)) / (s * s);
            default: return (f(x + 2 * s) - 2 * f(x + s) + 2 * f(x - s) - f(x - 2 * s)) / (2 * s * s * s);
        }
    };
    // Ridders: shrink the step by `con` and extrapolate in s^2.
    constexpr int ntab = 10;
    constexpr double con = 1.4;
    constexpr double con2 = con * con;
    double table[ntab][ntab];
    double s = h;
    table[0][0] = central(s);
    double best = table[0][0];
    double err = std::numeric_limits<double>::max();
    for (int i = 1; i < ntab; ++i) {
        s /= con;
        table[0][i] = central(s);
        double fac = con2;
        for (int j = 1; j <= i; ++j) {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= con2;
            const double e = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                      std::abs(table[j][i] - table[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                best = table[j][i];
            }
        }
        if (std::abs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * err) break;
    }
    return best;
}

}  // namespace vk::quad
