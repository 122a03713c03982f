#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablehcm {

// Thrown when an adaptive rule cannot reach the requested tolerance; the
// message carries the achieved error estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval.  Stops when the
// local error estimate is below abstol + reltol * |integral|.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abstol = 1e-12, double reltol = 1e-10);

// Integral over [a, infinity) by doubling segments [a, a+w], [a+w, a+3w], ...
// until a segment contributes less than the tolerance twice in a row.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abstol = 1e-12, double reltol = 1e-10,
                        double first_width = 1.0);

// Fixed (non-adaptive) tanh-sinh rule in long double.  All nodes are generated
// once per step size, so the computed integral is an analytic function of any
// parameter of the integrand; this matters when integrals are fed into
// finite-difference sign tests.
class TanhSinh {
public:
    // step = 2^-levels; nodes cover (-1, 1) until the weights fall below 1e-24
    explicit TanhSinh(int levels);

    struct Node {
        long double one_minus_t;  // 1 - t, exact near the right endpoint
        long double one_plus_t;   // 1 + t, exact near the left endpoint
        long double weight;       // step * w
    };

    const std::vector<Node>& nodes() const { return nodes_; }

    // integral of f over (a, b); f is evaluated at points strictly inside
    long double integrate(const std::function<long double(long double)>& f,
                          long double a, long double b) const;

private:
    std::vector<Node> nodes_;
};

}  // namespace stablehcm
