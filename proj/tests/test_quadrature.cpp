#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_sf_expint.h>

#include "vk/quadrature.hpp"

using namespace vk;
using quad::cplx;

TEST_CASE("finite interval against closed forms") {
    Tolerances tol;
    auto r = quad::integrate_interval([](double x) -> cplx { return std::sqrt(x); }, 0.0, 1.0, tol);
    CHECK(r.value.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(r.value.imag() == 0.0);

    auto osc = quad::integrate_interval([](double x) -> cplx { return std::exp(cplx{0, 50 * x}); }, 0.0, 3.0, tol, 40);
    const cplx exact = (std::exp(cplx{0, 150}) - 1.0) / cplx{0, 50};
    CHECK(std::abs(osc.value - exact) < 1e-12);

    auto rev = quad::integrate_interval([](double x) -> cplx { return x * x; }, 2.0, 0.0, tol);
    CHECK(rev.value.real() == doctest::Approx(-8.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("breakpoints resolve a kink") {
    Tolerances tol;
    const double bp[] = {0.3};
    auto r = quad::integrate_interval([](double x) -> cplx { return std::abs(x - 0.3); }, 0.0, 1.0, tol, 1, bp);
    CHECK(r.value.real() == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
    CHECK(r.evaluations <= 60);
}

TEST_CASE("agreement with Boost Gauss-Kronrod on smooth integrands") {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [](double x) { return std::log1p(x * x) * std::cos(3 * x); };
    const double ref = gauss_kronrod<double, 61>::integrate(f, -1.0, 2.5, 15, 1e-14);
    auto r = quad::integrate_interval([&](double x) -> cplx { return f(x); }, -1.0, 2.5, Tolerances{});
    CHECK(r.value.real() == doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("semi-infinite map") {
    Tolerances tol;
    auto r = quad::integrate_semi_infinite([](double x) -> cplx { return std::exp(-x) * std::cos(x); }, 1.0, tol);
    CHECK(r.value.real() == doctest::Approx(0.5).epsilon(1e-11));

    boost::math::quadrature::exp_sinh<double> es;
    auto g = [](double x) { return x * x * std::exp(-2 * x) / (1 + x); };
    const double ref = es.integrate(g);
    auto r2 = quad::integrate_semi_infinite([&](double x) -> cplx { return g(x); }, 2.0, tol);
    CHECK(r2.value.real() == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("oscillatory limit against sine and cosine integrals") {
    // \int_0^\infty e^{ikx}/(1+x) dx
    for (double k : {0.7, 2.0, 9.0}) {
        const double si = gsl_sf_Si(k), ci = gsl_sf_Ci(k);
        const double c = -ci * std::cos(k) + (pi / 2 - si) * std::sin(k);
        const double s = ci * std::sin(k) + (pi / 2 - si) * std::cos(k);
        auto r = quad::integrate_oscillatory_limit([](double x) -> cplx { return 1.0 / (1.0 + x); }, k, Tolerances{});
        CHECK(r.value.real() == doctest::Approx(c).epsilon(1e-9));
        CHECK(r.value.imag() == doctest::Approx(s).epsilon(1e-9));
        CHECK(r.error_estimate < 1e-8);
    }
}

TEST_CASE("regulated integral matches the damped closed form") {
    // \int_0^\infty e^{(ik - eps) x} dx = 1/(eps - ik)
    const double k = 3.0, eps = 0.2;
    auto r = quad::integrate_oscillatory_regulated([](double) -> cplx { return 1.0; }, k, eps, Tolerances{});
    CHECK(std::abs(r.value - 1.0 / cplx{eps, -k}) < 1e-12);
    CHECK_THROWS_AS(quad::integrate_oscillatory_regulated([](double) -> cplx { return 1.0; }, k, 0.0, Tolerances{}),
                    DomainError);
    Tolerances small;
    small.max_evaluations = 1000;
    CHECK_THROWS_AS(quad::integrate_oscillatory_regulated([](double) -> cplx { return 1.0; }, k, 1e-3, small),
                    ConvergenceError);
}

TEST_CASE("regulator extrapolation") {
    // polynomial in eps of degree < samples is reproduced exactly
    std::vector<quad::RegulatorSample> s;
    for (int j = 0; j < 5; ++j) {
        const double e = 0.5 / (1 << j);
        s.push_back({e, cplx{2.0 - 3 * e + 7 * e * e * e, e * e}});
    }
    auto x = quad::extrapolate_regulator(s);
    CHECK(std::abs(x.value - cplx{2.0, 0.0}) < 1e-13);

    std::vector<quad::RegulatorSample> one{{0.1, 1.0}};
    CHECK_THROWS_AS(quad::extrapolate_regulator(one), DomainError);
    std::vector<quad::RegulatorSample> bad{{0.1, 1.0}, {0.2, 1.0}};
    CHECK_THROWS_AS(quad::extrapolate_regulator(bad), DomainError);
}

TEST_CASE("budget exhaustion is reported, not truncated") {
    Tolerances tol;
    tol.max_evaluations = 200;
    tol.rel_tol = 1e-14;
    CHECK_THROWS_AS(quad::integrate_interval([](double x) -> cplx { return 1.0 / std::sqrt(std::abs(x - 0.31)); },
                                             0.0, 1.0, tol),
                    ConvergenceError);
}

TEST_CASE("Ridders derivatives") {
    for (double x : {0.3, 1.2}) {
        CHECK(quad::derivative_n([](double t) { return std::sin(t); }, x, 1, 0.1) == doctest::Approx(std::cos(x)).epsilon(1e-10));
        CHECK(quad::derivative_n([](double t) { return std::sin(t); }, x, 2, 0.1) == doctest::Approx(-std::sin(x)).epsilon(1e-8));
        CHECK(quad::derivative_n([](double t) { return std::sin(t); }, x, 3, 0.1) == doctest::Approx(-std::cos(x)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(quad::derivative_n([](double t) { return t; }, 0.0, 4, 0.1), DomainError);
}

TEST_CASE("property: additivity and exactness on random polynomials") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c(12);
        for (auto& x : c) x = U(rng);
        auto p = [&](double x) -> cplx {
            double s = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
            return s;
        };
        auto P = [&](double x) {
            double s = 0;
            for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i] / (i + 1);
            return s * x;
        };
        double a = U(rng), b = U(rng);
        if (a > b) std::swap(a, b);
        const double m = a + (b - a) * 0.37;
        const auto whole = quad::integrate_interval(p, a, b, Tolerances{});
        const auto left = quad::integrate_interval(p, a, m, Tolerances{});
        const auto right = quad::integrate_interval(p, m, b, Tolerances{});
        const double exact = P(b) - P(a);
        const double scale = 1.0 + std::abs(exact);
        CHECK(std::abs(whole.value.real() - exact) < 1e-12 * scale * 50);
        CHECK(std::abs(left.value.real() + right.value.real() - whole.value.real()) < 1e-12 * scale * 50);
    }
}
