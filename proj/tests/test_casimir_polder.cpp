#include <doctest.h>

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_sf_expint.h>

#include "vk/casimir_polder.hpp"
#include "vk/quadrature.hpp"

using namespace vk;
using cplx = std::complex<double>;

namespace {

// G(p) = \int_0^\infty e^{-py}/(1+y^2) dy and its derivatives, via Si/Ci.
struct Aux {
    double G, G1, G2, G3;
};
Aux aux(double p) {
    const double si = gsl_sf_Si(p) - pi / 2, ci = gsl_sf_Ci(p);
    Aux a;
    a.G = ci * std::sin(p) - si * std::cos(p);
    a.G1 = ci * std::cos(p) + si * std::sin(p);
    a.G2 = 1.0 / p - a.G;
    a.G3 = -1.0 / (p * p) - a.G1;
    return a;
}

// h(rho) = G(2 rho)/rho
double h2_oracle(double r) {
    const Aux a = aux(2 * r);
    return 4 * a.G2 / r - 4 * a.G1 / (r * r) + 2 * a.G / (r * r * r);
}
double h3_oracle(double r) {
    const Aux a = aux(2 * r);
    return 8 * a.G3 / r - 12 * a.G2 / (r * r) + 12 * a.G1 / (r * r * r) - 6 * a.G / (r * r * r * r);
}

// S(rho) = T(x)/x, x = 2 rho, T(x) = \int_0^\infty sin(x k)/(k (k+1)) dk.
// T = pi/2 - Sn, T' = C, T'' = -1/x + Sn, T''' = 1/x^2 - C, T'''' = -2/x^3 + 1/x - Sn
// with Sn = \int sin(xk)/(k+1), C = \int cos(xk)/(k+1).
double s_oracle(double rho, int n) {
    const double x = 2 * rho;
    const double si = gsl_sf_Si(x), ci = gsl_sf_Ci(x);
    const double Sn = ci * std::sin(x) + (pi / 2 - si) * std::cos(x);
    const double C = -ci * std::cos(x) + (pi / 2 - si) * std::sin(x);
    const double T[5] = {pi / 2 - Sn, C, -1 / x + Sn, 1 / (x * x) - C, -2 / (x * x * x) + 1 / x - Sn};
    // Leibniz rule with (1/x)^{(m)} = (-1)^m m! / x^{m+1}
    double f = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        const int m = n - k;
        double fact = 1.0;
        for (int i = 2; i <= m; ++i) fact *= i;
        f += binom * T[k] * (m % 2 ? -1.0 : 1.0) * fact / std::pow(x, m + 1);
        binom = binom * (n - k) / (k + 1);
    }
    return std::pow(2.0, n) * f;
}

const AtomSpec atom{};

}  // namespace

TEST_CASE("stationary kernels against the sine/cosine-integral closed form") {
    for (double rho : {1e-3, 0.05, 0.4, 1.0, 3.7, 25.0, 400.0}) {
        CHECK(cp::kernel::stationary_h2(rho).value == doctest::Approx(h2_oracle(rho)).epsilon(1e-9));
        CHECK(cp::kernel::stationary_h3(rho).value == doctest::Approx(h3_oracle(rho)).epsilon(1e-9));
    }
}

TEST_CASE("residual kernel derivatives against the closed form") {
    for (double rho : {0.05, 0.3, 1.0, 3.0, 10.0})
        for (int n = 0; n <= 4; ++n)
            CHECK(cp::kernel::residual_s(rho, n).value == doctest::Approx(s_oracle(rho, n)).epsilon(1e-8));
    CHECK_THROWS_AS(cp::kernel::residual_s(1.0, 5), DomainError);
}

TEST_CASE("near and far limits") {
    for (double R : {1e-4, 1e-3}) {
        const double r = cp::stationary_potential(atom, R).value / cp::asymptote_near(atom, R);
        CHECK(r == doctest::Approx(1.0).epsilon(0.01));
    }
    for (double R : {1e3, 1e4}) {
        const double r = cp::stationary_potential(atom, R).value / cp::asymptote_far(atom, R);
        CHECK(r == doctest::Approx(1.0).epsilon(0.01));
    }
    // crossover: neither limit holds at R ~ c/omega0
    const double mid = cp::stationary_potential(atom, 1.0).value;
    CHECK(std::abs(mid / cp::asymptote_near(atom, 1.0) - 1) > 0.1);
    CHECK(std::abs(mid / cp::asymptote_far(atom, 1.0) - 1) > 0.1);
}

TEST_CASE("units enter only through the scales") {
    const UnitSystem si(2.99792458e8, 1.054571817e-34, 1.380649e-23);
    const AtomSpec na(2 * pi * 5.09e14, 2.4e-29);
    const double R = 3e-7;
    const double rho = to_dimensionless(na, R, si);
    const double U = cp::stationary_potential(na, R, si).value;
    CHECK(U == doctest::Approx(-cp::energy_scale(na, si) * h2_oracle(rho)).epsilon(1e-9));
    const double near = cp::asymptote_near(na, 1e-3 * si.c / na.omega0, si);
    CHECK(cp::stationary_potential(na, 1e-3 * si.c / na.omega0, si).value / near == doctest::Approx(1).epsilon(0.01));
}

TEST_CASE("stationary force is attractive and is minus the gradient") {
    for (double R : {0.02, 0.5, 2.0, 30.0}) {
        const auto F = cp::stationary_force(atom, R);
        CHECK(F.force_z < 0);
        CHECK(F.residual_part == 0.0);
        const double dU = quad::derivative_n([](double x) { return cp::stationary_potential(atom, x).value; }, R, 1, 0.1 * R);
        CHECK(F.force_z == doctest::Approx(-dU).epsilon(1e-7));
    }
    CHECK_THROWS_AS(cp::stationary_potential(atom, 0.0), DomainError);
    CHECK_THROWS_AS(cp::stationary_force(atom, -1.0), DomainError);
}

TEST_CASE("moving atom: release-point structure") {
    const double R0 = 1.0;
    const auto at = cp::moving_force(atom, R0, R0);
    CHECK(at.residual_part == 0.0);
    CHECK(at.force_z == cp::stationary_force(atom, R0).force_z);

    // pulled back toward R0 from both sides
    for (double f : {0.3, 0.5, 0.8}) CHECK(cp::moving_force(atom, f * R0, R0).residual_part > 0);
    for (double f : {1.2, 2.0, 4.0}) CHECK(cp::moving_force(atom, f * R0, R0).residual_part < 0);

    // bracket g(R) - g(R0) is antisymmetric in the two distances
    for (auto [a, b] : {std::pair{0.5, 1.0}, std::pair{2.0, 1.0}, std::pair{0.7, 3.1}}) {
        const double ab = cp::moving_potential(atom, a, b).bracket_part;
        const double ba = cp::moving_potential(atom, b, a).bracket_part;
        CHECK(ab == doctest::Approx(-ba).epsilon(1e-12));
    }
    // value = stationary + [g(2) - g(1)] - g'(1)(2 - 1)
    const auto U = cp::moving_potential(atom, 2.0, 1.0);
    const double g2 = cp::residual_potential_kernel(atom, 2.0).value;
    const double g1 = cp::residual_potential_kernel(atom, 1.0).value;
    const double dg1 = cp::residual_force_kernel(atom, 1.0).value;
    CHECK(U.bracket_part == doctest::Approx(g2 - g1).epsilon(1e-14));
    CHECK(U.anchor_part == doctest::Approx(-dg1).epsilon(1e-14));
    CHECK(U.value == doctest::Approx(cp::stationary_potential(atom, 2.0).value + g2 - g1 - dg1).epsilon(1e-14));
}

TEST_CASE("moving atom: force is minus the gradient of the potential") {
    for (double R0 : {0.4, 1.0, 2.5})
        for (double R : {0.3, 0.9, 1.7, 4.0}) {
            const double F = cp::moving_force(atom, R, R0).force_z;
            const double dU =
                quad::derivative_n([&](double x) { return cp::moving_potential(atom, x, R0).value; }, R, 1, 0.05 * R);
            CHECK(F == doctest::Approx(-dU).epsilon(1e-7));
        }
}

TEST_CASE("residual kernel g' is the derivative of g") {
    for (double r : {0.2, 1.0, 5.0}) {
        const double d = quad::derivative_n([](double x) { return cp::residual_potential_kernel(atom, x).value; }, r, 1, 0.05 * r);
        CHECK(cp::residual_force_kernel(atom, r).value == doctest::Approx(d).epsilon(1e-7));
    }
}

namespace {

// \int_0^\infty k^2 e^{i k beta}/(k + w) dk by brute force, Im beta > 0.
cplx wave_moment_brute(cplx beta, double w) {
    using boost::math::quadrature::gauss_kronrod;
    const double kend = 45.0 / beta.imag();
    auto re = [&](double k) { return (k * k * std::exp(cplx{0, k} * beta) / (k + w)).real(); };
    auto im = [&](double k) { return (k * k * std::exp(cplx{0, k} * beta) / (k + w)).imag(); };
    const int pieces = 64;
    cplx sum = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double a = kend * i / pieces, b = kend * (i + 1) / pieces;
        sum += cplx{gauss_kronrod<double, 61>::integrate(re, a, b, 20, 1e-13),
                    gauss_kronrod<double, 61>::integrate(im, a, b, 20, 1e-13)};
    }
    return sum;
}

// Full transient force, k integral done numerically.
double transient_brute(double rho, double theta, double v, double kappa_max) {
    using boost::math::quadrature::gauss_kronrod;
    const double eta = 1.0 / kappa_max;
    auto f = [&](double mu) {
        const double sp = 1 + mu * v, sm = 1 - mu * v;
        const cplx bp{theta * sp - 2 * mu * rho, eta};
        const cplx bm{-theta * sm - 2 * mu * rho, eta};
        const cplx s = cplx{0, 1} * (std::exp(cplx{0, theta}) * wave_moment_brute(bp, 1 / sp) / sp +
                                     std::exp(cplx{0, -theta}) * wave_moment_brute(bm, 1 / sm) / sm);
        return mu * mu * mu * 2 * s.real();
    };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 8, 1e-10) / (4 * pi);
}

}  // namespace

TEST_CASE("transient kernel: analytic k integral against brute force") {
    // soft cutoff keeps the brute-force k range short
    for (auto [rho, theta, v] : {std::tuple{1.0, 0.5, 0.0}, std::tuple{0.7, 2.0, 0.0}, std::tuple{1.0, 1.2, 0.2}}) {
        const double fast = cp::kernel::transient(rho, theta, v, 5.0).value;
        const double slow = transient_brute(rho, theta, v, 5.0);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-7));
    }
}

TEST_CASE("transient force: relaxation, visibility and cutoff insensitivity") {
    cp::WallScenario w;
    w.R = w.R0 = 1.0;
    const double steady = cp::stationary_force(atom, 1.0).force_z;
    for (double t : {40.0, 60.0, 100.0, 200.0}) {
        w.t_elapsed = t;
        const auto F = cp::transient_force(atom, w);
        CHECK(F.stationary_part == steady);
        CHECK(std::abs(F.force_z - steady) <= 0.01 * std::abs(steady));
    }
    // visible after about one round trip
    double peak = 0.0;
    for (double t = 1.0; t <= 3.0; t += 0.1) {
        w.t_elapsed = t;
        peak = std::max(peak, std::abs(cp::transient_force(atom, w).transient_part / steady));
    }
    CHECK(peak > 0.1);
    w.t_elapsed = 40.0;
    const auto F = cp::transient_force(atom, w);
    CHECK(F.cutoff_sensitivity < 1e-3 * std::abs(F.transient_part));
}

TEST_CASE("transient force at switch-on (regression fixture)") {
    cp::WallScenario w;
    w.R = w.R0 = 1.0;
    w.t_elapsed = 0.0;
    const auto F = cp::transient_force(atom, w);
    CHECK(F.transient_part / F.stationary_part == doctest::Approx(0.0611281476224).epsilon(1e-6));
}

TEST_CASE("transient force domain checks") {
    cp::WallScenario w;
    w.R = w.R0 = 1.0;
    w.V = 0.5;
    w.t_elapsed = 3.0;  // R - V t < 0
    CHECK_THROWS_AS(cp::transient_force(atom, w), DomainError);
    w.V = 1.5;
    w.t_elapsed = 0.1;
    CHECK_THROWS_AS(cp::transient_force(atom, w), DomainError);
    w.V = 0.0;
    w.t_elapsed = -1.0;
    CHECK_THROWS_AS(cp::transient_force(atom, w), DomainError);
}
