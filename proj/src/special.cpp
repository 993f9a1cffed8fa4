#include "vk/special.hpp"

#include <cmath>
#include <numbers>

#include "vk/core.hpp"

namespace vk::special {

namespace {

using cplx = std::complex<double>;

cplx e1_series(cplx z) {
    // E1(z) = -gamma - ln z - sum_{n>=1} (-z)^n / (n n!)
    cplx term = 1.0;
    cplx sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        term *= -z / static_cast<double>(n);
        const cplx add = term / static_cast<double>(n);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -std::numbers::egamma - std::log(z) - sum;
}

// exp(z) E1(z) by the continued fraction 1/(z+1- 1/(z+3- 4/(z+5- ...))),
// modified Lentz.
cplx e1_scaled_cf(cplx z) {
    constexpr double tiny = 1e-300;
    cplx b = z + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

cplx expint_e1_scaled(cplx z) {
    require(z != cplx{}, "expint_e1: z must be nonzero");
    require(z.real() >= 0, "expint_e1: only Re z >= 0 is supported");
    if (std::abs(z) < 2.0) return std::exp(z) * e1_series(z);
    return e1_scaled_cf(z);
}

cplx expint_e1(cplx z) {
    require(z != cplx{}, "expint_e1: z must be nonzero");
    require(z.real() >= 0, "expint_e1: only Re z >= 0 is supported");
    if (std::abs(z) < 2.0) return e1_series(z);
    return std::exp(-z) * e1_scaled_cf(z);
}

double odd_cube_moment(double a) {
    if (std::abs(a) < 1.0) {
        // 2 sum_n (-1)^n a^{2n+1} / ((2n+1)! (2n+5))
        double term = a;  // a^{2n+1}/(2n+1)!
        double sum = 0.0;
        for (int n = 0; n < 30; ++n) {
            const double add = term / (2.0 * n + 5.0);
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
            term *= -a * a / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
        }
        return 2.0 * sum;
    }
    const double s = std::sin(a);
    const double c = std::cos(a);
    const double a2 = a * a;
    return 2.0 * (-c / a + 3.0 * s / a2 + 6.0 * c / (a2 * a) - 6.0 * s / (a2 * a2));
}

}  // namespace vk::special
