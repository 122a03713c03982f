#pragma once

namespace stablehcm {

// Euler's constant, -psi(1).
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431042;

// ln Gamma(x) for x > 0.  Relative error <= 1e-13 on [1e-3, 1e3]
// (absolute near the zeros at x = 1 and x = 2).
double ln_gamma(double x);

// psi(x) = d/dx ln Gamma(x) for x > 0.  Absolute error <= 1e-12 on [1e-3, 1e3].
double digamma(double x);

// psi'(x) for x > 0.  Absolute error <= 1e-10 on [1e-3, 1e3].
double trigamma(double x);

namespace detail {

// Long-double cores, no argument validation; x > 0 assumed.
long double ln_gamma_ld(long double x);
long double digamma_ld(long double x);
long double trigamma_ld(long double x);

// sin(pi * k * alpha) with the product k*alpha formed exactly (fma two-product)
// and reduced mod 2 before multiplying by pi, so the result keeps full relative
// accuracy near the zeros at integer k*alpha.
long double sinpi_prod(double k, double alpha);

}  // namespace detail

}  // namespace stablehcm
