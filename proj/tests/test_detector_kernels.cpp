#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vk/detector_kernels.hpp"

using namespace vk;
using namespace vk::kernels;
using cplx = std::complex<double>;

namespace {

const KernelSpec inertial{traj::InertialTrajectory{}, 1.0, 0.01, {}};
KernelSpec accelerated(double alpha, double eps = 0.01) {
    return {traj::AcceleratedTrajectory{alpha}, 1.0, eps, {}};
}

// \int_0^\infty dk k/(4 pi) [u1'u2' e^{-ik du} + v1'v2' e^{-ik dv}] with Boost.
cplx mode_sum(const Trajectory& t, double tau1, double tau2, double eps) {
    using boost::math::quadrature::gauss_kronrod;
    auto lc = [&](cplx tau) { return std::visit([&](const auto& tr) { return traj::light_cone(tr, tau); }, t); };
    const auto a = lc({tau1, -eps / 2}), b = lc({tau2, eps / 2});
    const cplx du = a.u - b.u, dv = a.v - b.v;
    auto f = [&](double k) {
        return k / (4 * pi) * (a.du * b.du * std::exp(cplx{0, -k} * du) + a.dv * b.dv * std::exp(cplx{0, -k} * dv));
    };
    const double kend = 45.0 / std::min(-du.imag(), -dv.imag());
    const int pieces = 400;
    cplx s = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double lo = kend * i / pieces, hi = kend * (i + 1) / pieces;
        s += cplx{gauss_kronrod<double, 61>::integrate([&](double k) { return f(k).real(); }, lo, hi, 10, 1e-14),
                  gauss_kronrod<double, 61>::integrate([&](double k) { return f(k).imag(); }, lo, hi, 10, 1e-14)};
    }
    return s;
}

}  // namespace

TEST_CASE("inertial vacuum kernel at dtau = 1, eps = 0.01") {
    const double N = noise_kernel(inertial, 1.0, 0.0);
    const double eps = 0.01;
    CHECK(N == doctest::Approx(-(1 / (2 * pi)) * (1 - eps * eps) / std::pow(1 + eps * eps, 2)).epsilon(1e-14));
    CHECK(N == doctest::Approx(-0.1591).epsilon(1e-3));
}

TEST_CASE("closed forms against the light-cone route and the mode sum") {
    const KernelSpec moving{traj::InertialTrajectory{0.5, -0.2}, 1.0, 0.01, {}};
    for (const KernelSpec& s : {inertial, moving, accelerated(1.0), accelerated(2.5)}) {
        for (auto [t1, t2] : {std::pair{1.0, 0.0}, std::pair{0.3, 1.1}, std::pair{2.0, 1.4}}) {
            const cplx closed = two_point_derivative(s, t1, t2);
            const cplx cone = two_point_lightcone(s.trajectory, t1, t2, s.epsilon);
            CHECK(std::abs(closed - cone) < 1e-10 * std::abs(closed));
        }
        const cplx closed = two_point_derivative(s, 1.0, 0.0);
        const cplx brute = mode_sum(s.trajectory, 1.0, 0.0, s.epsilon);
        CHECK(std::abs(closed - brute) < 1e-10 * std::abs(closed));
    }
}

TEST_CASE("noise symmetric, dissipation antisymmetric on a 10 x 10 grid") {
    for (const KernelSpec& s : {inertial, accelerated(1.0), accelerated(0.3)})
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double t1 = -1.0 + 0.31 * i, t2 = -0.7 + 0.27 * j;
                const double n12 = noise_kernel(s, t1, t2), n21 = noise_kernel(s, t2, t1);
                const double d12 = dissipation_kernel(s, t1, t2), d21 = dissipation_kernel(s, t2, t1);
                CHECK(std::abs(n12 - n21) <= 1e-12 * std::abs(n12));
                CHECK(std::abs(d12 + d21) <= 1e-12 * std::max(std::abs(d12), std::abs(n12)));
                if (i == 0 && j == 0) CHECK(dissipation_kernel(s, t1, t1) == 0.0);
            }
}

TEST_CASE("stationarity of the accelerated kernels along the light-cone route") {
    for (double alpha : {0.5, 1.0, 4.0}) {
        const auto s = accelerated(alpha);
        for (double shift : {0.3, 0.7, 1.3}) {
            const double sh = shift / alpha;
            const cplx a = two_point_lightcone(s.trajectory, 0.9 / alpha, 0.1 / alpha, s.epsilon);
            const cplx b = two_point_lightcone(s.trajectory, 0.9 / alpha + sh, 0.1 / alpha + sh, s.epsilon);
            CHECK(std::abs(a.real() - b.real()) <= 1e-8 * std::abs(a.real()));
            CHECK(std::abs(a.imag() - b.imag()) <= 1e-8 * std::abs(a.imag()));
        }
    }
}

TEST_CASE("zero regulator is rejected") {
    auto s = inertial;
    s.epsilon = 0.0;
    CHECK_THROWS_AS(two_point_derivative(s, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(two_point_lightcone(s.trajectory, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(extrapolated_sample(inertial, 1.0, 1.0), DomainError);
}

TEST_CASE("Unruh temperature and thermal equivalence") {
    CHECK(unruh_temperature(2 * pi) == doctest::Approx(1.0));
    const UnitSystem si(2.99792458e8, 1.054571817e-34, 1.380649e-23);
    CHECK(unruh_temperature(1.0, si) == doctest::Approx(si.hbar / (2 * pi * si.kB)).epsilon(1e-15));
    CHECK_THROWS_AS(unruh_temperature(-1.0), DomainError);
    for (double alpha : {1.0, 10.0})
        for (double d : {0.5, 1.0, 2.0}) {
            const double dt = d / alpha;
            const auto acc = extrapolated_sample(accelerated(alpha, 0.02 / alpha), dt, 0.0);
            const double th = thermal_inertial_noise_limit(unruh_temperature(alpha), dt, 0.02 / alpha);
            CHECK(acc.noise == doctest::Approx(th).epsilon(1e-6));
            // the exact eps -> 0 limit of the closed form
            const double exact = -(alpha * alpha / (8 * pi)) / std::pow(std::sinh(alpha * dt / 2), 2);
            CHECK(acc.noise == doctest::Approx(exact).epsilon(1e-8));
        }
}

TEST_CASE("thermal noise: zero-temperature limit") {
    const double vac = noise_kernel(inertial, 1.0, 0.0);
    CHECK(thermal_inertial_noise(1e-4, 1.0, 0.0, 0.01) == doctest::Approx(vac).epsilon(1e-6));
    CHECK(thermal_inertial_noise(0.0, 1.0, 0.0, 0.01) == vac);
    CHECK_THROWS_AS(thermal_inertial_noise(-1.0, 1.0, 0.0, 0.01), DomainError);
}

TEST_CASE("imaginary-time periodicity of the accelerated closed form") {
    for (double alpha : {0.5, 2.0})
        for (double d : {0.3, 1.7}) {
            const cplx z{d, -0.05};
            const cplx shifted = z - cplx{0, 2 * pi / alpha};
            CHECK(std::abs(accelerated_closed_form(alpha, z) - accelerated_closed_form(alpha, shifted)) <
                  1e-12 * std::abs(accelerated_closed_form(alpha, z)));
        }
}

TEST_CASE("dissipation kernel equals the inertial one") {
    for (double alpha : {1.0, 10.0}) {
        const auto rep = dissipation_equivalence_check(alpha, {0.5 / alpha, 1.0 / alpha, 2.0 / alpha}, 0.02 / alpha);
        CHECK(rep.max_pointwise_deviation <= 1e-6);
        CHECK(rep.pairing_deviation <= 1e-6);
        CHECK(rep.pairing_inertial == doctest::Approx(0.5).epsilon(1e-8));
    }
    // nearly flat trajectory
    const auto a = extrapolated_sample(accelerated(1e-3), 1.0, 0.0);
    const auto b = extrapolated_sample(inertial, 1.0, 0.0);
    CHECK(a.noise == doctest::Approx(b.noise).epsilon(1e-6));
    CHECK(std::abs(a.dissipation - b.dissipation) <= 1e-6 * std::abs(b.noise));
}

TEST_CASE("Gauss-Hermite rule") {
    const auto gh = gauss_hermite(32);
    double m0 = 0, m2 = 0, m4 = 0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        m0 += gh.weights[i];
        m2 += gh.weights[i] * std::pow(gh.nodes[i], 2);
        m4 += gh.weights[i] * std::pow(gh.nodes[i], 4);
    }
    CHECK(m0 == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-14));
    CHECK(m4 == doctest::Approx(3 * std::sqrt(pi) / 4).epsilon(1e-13));
    CHECK(std::is_sorted(gh.nodes.begin(), gh.nodes.end()));
}

TEST_CASE("smeared kernels") {
    auto s = accelerated(1.0, 0.02);
    s.smearing_sigma = 1e-3;
    const auto tiny = smeared_kernel(s, 1.0, 0.0);
    CHECK(tiny.noise == doctest::Approx(noise_kernel(accelerated(1.0, 0.02), 1.0, 0.0)).epsilon(0.01));

    s.smearing_sigma = 0.1;
    const auto diag = smeared_kernel(s, 3.0, 3.0);
    CHECK(std::abs(diag.dissipation) <= 1e-12 * std::abs(diag.noise));

    const auto lim = extrapolated_sample(s, 1.0, 0.0);
    const auto bare = extrapolated_sample(accelerated(1.0, 0.02), 1.0, 0.0);
    CHECK(std::isfinite(lim.noise));
    CHECK(std::abs(lim.noise / bare.noise - 1) < 0.1);
    CHECK(lim.noise / bare.noise == doctest::Approx(1.03488).epsilon(1e-4));

    s.smearing_sigma = 0.5;  // reaches the horizon
    CHECK_THROWS_AS(smeared_kernel(s, 1.0, 0.0), DomainError);
    auto none = accelerated(1.0);
    CHECK_THROWS_AS(smeared_kernel(none, 1.0, 0.0), DomainError);
}
