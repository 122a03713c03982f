#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stablehcm {

// Index of a positive stable law on (0, infinity), normalized so that
// E[exp(-lambda Z)] = exp(-lambda^alpha).
struct StableParams {
    double alpha;
    explicit StableParams(double a);
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Density via the convergent series
//   f(x) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(k alpha + 1)/k! sin(pi k alpha) x^{-k alpha - 1},
// summed in long double until three consecutive terms fall below 1e-15 of the
// partial sum (sin(pi k alpha) vanishes exactly at integer k alpha, so a
// single small term is not evidence of convergence).  Throws ConvergenceError
// past 1e5 terms or if the terms overflow the long double range.
double density_series(const StableParams& p, double x);

// Density via the integral representation
//   f(x) = alpha/((1-alpha) pi) x^{-1/(1-alpha)} int_0^pi A(u) exp(-A(u) x^{-alpha/(1-alpha)}) du,
// evaluated with a fixed-node tanh-sinh rule (positive integrand, no
// cancellation; usable at arbitrarily small x).
double density_integral(const StableParams& p, double x);

// Dispatching evaluator: the series while its internal cancellation stays
// below 1e6 x result and the terms stay in range, the integral otherwise.
// This is the evaluator every downstream consumer should use.
double density(const StableParams& p, double x);

// Closed form at alpha = 1/2: f(x) = (1/(2 sqrt(pi x^3))) exp(-1/(4x)).
double density_half(double x);

// E[Z^{-s}] = Gamma(1 + s/alpha) / Gamma(1 + s), s >= 0.
double mellin_inverse_moment(const StableParams& p, double s);

// (quadrature of exp(-lambda x) f(x) over (0, inf), exp(-lambda^alpha))
std::pair<double, double> laplace_check(const StableParams& p, double lambda);

// n independent draws of Z via the exact Kanter construction
//   Z = (A(U) / E)^{(1-alpha)/alpha},  U ~ uniform(0, pi), E ~ exponential(1).
std::vector<double> sample_oracle(const StableParams& p, std::size_t n, std::uint64_t seed);

namespace detail {
// ln A(u) for the integral representation and the Kanter sampler, computed in
// the cancellation-free sinc form; u in (0, pi).
long double zolotarev_log_a(long double u, long double alpha);
}

}  // namespace stablehcm
