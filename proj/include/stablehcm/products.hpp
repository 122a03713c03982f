#pragma once

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace stablehcm {

// A finite independent product: an optional Gamma(c) factor times Beta(a_i, b_i)
// factors.  The densities of these products are the classical test inputs for
// hyperbolic complete monotonicity.
struct ProductSpec {
    std::optional<double> gamma_shape;
    std::vector<std::pair<double, double>> beta_factors;

    // the sufficient condition under which the product density is known to be
    // hyperbolically completely monotone: c present and c < min a_i
    bool gamma_shape_below_min_a() const;

    void validate() const;
};

// A density tabulated on a strictly increasing grid with log-log
// interpolation between nodes and analytic tail completion for the mass.
struct GridDensity {
    std::vector<double> nodes;
    std::vector<double> values;

    double interpolate(double x) const;

    // trapezoid over the grid plus power-law / exponential tail completions
    double mass() const;

    // two-column CSV with header
    void write_csv(std::ostream& os) const;
};

// Density of the product at a single point, by nested fixed-node quadrature:
// Beta factors convolved first on (0,1), then the Gamma kernel
//   g(x) = x^{c-1}/Gamma(c) int_0^1 e^{-x/y} y^{-c} h(y) dy.
// Exact nesting for up to two Beta factors; three or more go through a
// spline-cached pipeline (see products.cpp).
double product_density_at(const ProductSpec& spec, double x);

// The density tabulated on a caller-supplied grid.
GridDensity product_density(const ProductSpec& spec, const std::vector<double>& grid);

// Log-spaced default grid, 400 nodes per decade, spanning an estimated
// [1e-6, 1 - 1e-6] quantile range of the product.
std::vector<double> default_grid(const ProductSpec& spec);

// For a single Beta(a, b) factor and c < a: the normalized tilt
// y^{-c} f(y) / norm, which equals the Beta(a-c, b) density.
GridDensity tilted_density(const ProductSpec& spec, double c, const std::vector<double>& grid);

// E[X^s] of the product, in closed form through Gamma ratios.
double product_mellin(const ProductSpec& spec, double s);

}  // namespace stablehcm
