#pragma once

#include <complex>

namespace vk::special {

/// Exponential integral E1(z) for Re z >= 0, z != 0 (principal branch).
std::complex<double> expint_e1(std::complex<double> z);

/// exp(z) E1(z), evaluated without overflow for large |z|.
std::complex<double> expint_e1_scaled(std::complex<double> z);

/// \int_{-1}^{1} mu^3 sin(a mu) d mu, with a series branch near a = 0.
double odd_cube_moment(double a);

}  // namespace vk::special
