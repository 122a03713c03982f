#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stablehcm {

// v solving v + 1/v = w with v >= 1, for w >= 2.
double v_of_w(double w);

struct CmWitness {
    int k;         // difference order
    double w;      // left edge of the violating stencil
    double value;  // hcm_check: the signed difference (-1)^k Delta^k H;
                   // hm_check: the relative increase (H_next - H) / scale
};

// Result of a finite-difference monotonicity scan of H_u(w) = f(uv) f(u/v).
// "pass" certifies the necessary sign conditions held on the grid up to the
// slack; a witness is a disproof up to that slack, never a proof of anything.
struct CmReport {
    double u = 0.0;
    double w_min = 0.0;
    double w_max = 0.0;
    int n_points = 0;
    double delta = 0.0;
    int max_order = 0;
    double epsilon = 0.0;
    bool pass = false;
    std::vector<CmWitness> witnesses;
    std::vector<bool> order_pass;  // index k in 0..max_order

    std::string to_json() const;
};

using DensityFn = std::function<double(double)>;

// Forward-difference complete-monotonicity scan at orders 0..K: requires
// (-1)^k Delta_delta^k H_u(w) >= -epsilon * scale(w) at every grid point,
// scale(w) = max |H_u| over the stencil.  The grid is the n_points uniform
// lattice on [w_min, w_max]; stencils reach K*delta past w_max.
CmReport hcm_check(const DensityFn& f, double u, double w_min, double w_max,
                   int n_points, double delta, int max_order, double epsilon);

// Order-1 scan of consecutive grid values for each u in the grid: H_u must be
// nonincreasing up to relative slack epsilon.  The returned report carries the
// worst witness across the whole u-grid and pass = AND over u.
CmReport hm_check(const DensityFn& f, const std::vector<double>& u_grid,
                  double w_min, double w_max, int n_points, double epsilon);

}  // namespace stablehcm
