#include "stablehcm/hcm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace stablehcm {

namespace {

constexpr std::size_t witness_cap = 200;

double hyp_value(const DensityFn& f, double u, double w) {
    const double v = v_of_w(w);
    return f(u * v) * f(u / v);
}

}  // namespace

double v_of_w(double w) {
    if (!(w >= 2.0) || !std::isfinite(w)) {
        throw std::domain_error("v_of_w: w must be >= 2, got " + std::to_string(w));
    }
    // (w + sqrt(w^2 - 4))/2, with the spread form to avoid cancellation issues
    // for w barely above 2
    const double d = std::sqrt((w - 2.0) * (w + 2.0));
    return 0.5 * (w + d);
}

std::string CmReport::to_json() const {
    nlohmann::json j;
    j["u"] = u;
    j["w_min"] = w_min;
    j["w_max"] = w_max;
    j["n_points"] = n_points;
    j["delta"] = delta;
    j["max_order"] = max_order;
    j["epsilon"] = epsilon;
    j["pass"] = pass;
    nlohmann::json ws = nlohmann::json::array();
    for (const CmWitness& w : witnesses) {
        ws.push_back({{"k", w.k}, {"w", w.w}, {"value", w.value}});
    }
    j["witnesses"] = std::move(ws);
    return j.dump(2);
}

CmReport hcm_check(const DensityFn& f, double u, double w_min, double w_max,
                   int n_points, double delta, int max_order, double epsilon) {
    if (!(u > 0.0)) throw std::domain_error("hcm_check: u must be positive");
    if (!(w_min >= 2.0) || !(w_max > w_min)) {
        throw std::invalid_argument("hcm_check: need 2 <= w_min < w_max");
    }
    if (n_points < 2) throw std::invalid_argument("hcm_check: need at least 2 grid points");
    if (max_order < 1) throw std::invalid_argument("hcm_check: max order must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("hcm_check: delta must be positive");

    CmReport rep;
    rep.u = u;
    rep.w_min = w_min;
    rep.w_max = w_max;
    rep.n_points = n_points;
    rep.delta = delta;
    rep.max_order = max_order;
    rep.epsilon = epsilon;
    rep.order_pass.assign(max_order + 1, true);

    const double grid_step = (w_max - w_min) / (n_points - 1);
    const bool lattice = std::fabs(grid_step - delta) <= 1e-9 * delta;

    // H at every needed abscissa; in lattice mode the stencils share nodes
    std::vector<double> H;
    std::vector<double> base_w(n_points);
    for (int i = 0; i < n_points; ++i) base_w[i] = w_min + i * grid_step;

    auto value_at = [&](int i, int j) -> double {  // H(w_i + j delta)
        if (lattice) return H[i + j];
        return H[static_cast<std::size_t>(i) * (max_order + 1) + j];
    };

    if (lattice) {
        H.resize(n_points + max_order);
        for (int i = 0; i < n_points + max_order; ++i) {
            H[i] = hyp_value(f, u, w_min + i * grid_step);
        }
    } else {
        H.resize(static_cast<std::size_t>(n_points) * (max_order + 1));
        for (int i = 0; i < n_points; ++i) {
            for (int j = 0; j <= max_order; ++j) {
                H[static_cast<std::size_t>(i) * (max_order + 1) + j] =
                    hyp_value(f, u, base_w[i] + j * delta);
            }
        }
    }

    rep.pass = true;
    std::vector<double> diff(max_order + 1);
    for (int i = 0; i < n_points; ++i) {
        // forward differences on the stencil, all orders at once
        for (int j = 0; j <= max_order; ++j) diff[j] = value_at(i, j);
        double scale = 0.0;
        for (int j = 0; j <= max_order; ++j) scale = std::max(scale, std::fabs(diff[j]));
        if (diff[0] < -epsilon * scale) {
            rep.order_pass[0] = false;
            rep.pass = false;
            if (rep.witnesses.size() < witness_cap) {
                rep.witnesses.push_back({0, base_w[i], diff[0]});
            }
        }
        for (int k = 1; k <= max_order; ++k) {
            for (int j = 0; j <= max_order - k; ++j) diff[j] = diff[j + 1] - diff[j];
            const double signed_diff = (k % 2 ? -diff[0] : diff[0]);
            if (signed_diff < -epsilon * scale) {
                rep.order_pass[k] = false;
                rep.pass = false;
                if (rep.witnesses.size() < witness_cap) {
                    rep.witnesses.push_back({k, base_w[i], signed_diff});
                }
            }
        }
    }
    return rep;
}

CmReport hm_check(const DensityFn& f, const std::vector<double>& u_grid,
                  double w_min, double w_max, int n_points, double epsilon) {
    if (u_grid.empty()) throw std::invalid_argument("hm_check: empty u grid");
    if (!(w_min >= 2.0) || !(w_max > w_min)) {
        throw std::invalid_argument("hm_check: need 2 <= w_min < w_max");
    }
    if (n_points < 2) throw std::invalid_argument("hm_check: need at least 2 grid points");

    CmReport rep;
    rep.w_min = w_min;
    rep.w_max = w_max;
    rep.n_points = n_points;
    rep.delta = (w_max - w_min) / (n_points - 1);
    rep.max_order = 1;
    rep.epsilon = epsilon;
    rep.order_pass.assign(2, true);
    rep.pass = true;
    rep.u = u_grid.front();

    double worst = 0.0;
    const double step = (w_max - w_min) / (n_points - 1);
    for (double u : u_grid) {
        if (!(u > 0.0)) throw std::domain_error("hm_check: u values must be positive");
        double prev = hyp_value(f, u, w_min);
        for (int i = 1; i < n_points; ++i) {
            const double w = w_min + i * step;
            const double cur = hyp_value(f, u, w);
            const double scale = std::max(std::fabs(prev), std::fabs(cur));
            if (scale > 0.0) {
                const double rel_increase = (cur - prev) / scale;
                if (rel_increase > epsilon) {
                    rep.pass = false;
                    rep.order_pass[1] = false;
                    if (rep.witnesses.size() < witness_cap) {
                        rep.witnesses.push_back({1, w_min + (i - 1) * step, rel_increase});
                    }
                    if (rel_increase > worst) {
                        worst = rel_increase;
                        rep.u = u;
                    }
                }
            }
            prev = cur;
        }
    }
    return rep;
}

}  // namespace stablehcm
