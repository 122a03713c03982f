#include "stablehcm/products.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

#include "stablehcm/quadrature.hpp"
#include "stablehcm/specfun.hpp"

namespace stablehcm {

namespace {

long double ln_beta(long double a, long double b) {
    return detail::ln_gamma_ld(a) + detail::ln_gamma_ld(b) - detail::ln_gamma_ld(a + b);
}

long double beta_density_ld(long double a, long double b, long double y) {
    if (y <= 0.0L || y >= 1.0L) return 0.0L;
    const long double e = (a - 1.0L) * std::log(y) + (b - 1.0L) * std::log1p(-y) - ln_beta(a, b);
    return std::exp(e);
}

const TanhSinh& inner_rule() {
    static const TanhSinh rule(5);
    return rule;
}

const TanhSinh& kernel_rule() {
    static const TanhSinh rule(6);
    return rule;
}

long double beta_pair_ld(double a1, double b1, double a2, double b2, long double y) {
    if (y <= 0.0L || y >= 1.0L) return 0.0L;
    // h(y) = int_y^1 f1(t) f2(y/t) dt/t
    auto integrand = [&](long double t) {
        return beta_density_ld(a1, b1, t) * beta_density_ld(a2, b2, y / t) / t;
    };
    return inner_rule().integrate(integrand, y, 1.0L);
}

// ln h tabulated against logit(y); linear segments capture the power laws at
// both ends of (0, 1).  Used for products of three or more Beta factors,
// where exact nesting is exponentially expensive.
class LogitGridDensity {
public:
    template <typename F>
    LogitGridDensity(double lo, double hi, int n, F&& eval) : lo_(lo), hi_(hi), n_(n) {
        step_ = (hi - lo) / (n - 1);
        logh_.reserve(n);
        for (int i = 0; i < n; ++i) {
            const long double z = lo + i * step_;
            const long double y = 1.0L / (1.0L + std::exp(-z));
            const long double h = eval(y);
            logh_.push_back(h > 0.0L ? std::log(h) : -1e30L);
        }
    }

    long double operator()(long double y) const {
        if (y <= 0.0L || y >= 1.0L) return 0.0L;
        const long double z = std::log(y / (1.0L - y));
        if (z <= lo_ || z >= hi_) return 0.0L;
        const long double u = (z - lo_) / step_;
        const int i = std::min(static_cast<int>(u), n_ - 2);
        const long double t = u - i;
        const long double lh = logh_[i] + t * (logh_[i + 1] - logh_[i]);
        return lh > -7e29L ? std::exp(lh) : 0.0L;
    }

private:
    double lo_, hi_;
    int n_;
    long double step_;
    std::vector<long double> logh_;
};

using BetaList = std::vector<std::pair<double, double>>;

long double beta_product_ld(const BetaList& f, long double y);

const LogitGridDensity& cascaded_product(const BetaList& f) {
    thread_local std::vector<std::pair<BetaList, std::unique_ptr<LogitGridDensity>>> cache;
    for (const auto& e : cache) {
        if (e.first == f) return *e.second;
    }
    // fold factors left to right; each stage is tabulated before the next
    std::unique_ptr<LogitGridDensity> grid;
    const int n = 12001;
    const double span = 34.0;
    for (std::size_t m = 2; m <= f.size(); ++m) {
        auto eval = [&](long double y) -> long double {
            if (m == 2) return beta_pair_ld(f[0].first, f[0].second, f[1].first, f[1].second, y);
            const auto& prev = *grid;
            const auto& [na, nb] = f[m - 1];
            auto integrand = [&](long double t) {
                return prev(t) * beta_density_ld(na, nb, y / t) / t;
            };
            return inner_rule().integrate(integrand, y, 1.0L);
        };
        grid = std::make_unique<LogitGridDensity>(-span, span, n, eval);
    }
    if (cache.size() >= 4) cache.erase(cache.begin());
    cache.emplace_back(f, std::move(grid));
    return *cache.back().second;
}

long double beta_product_ld(const BetaList& f, long double y) {
    if (f.size() == 1) return beta_density_ld(f[0].first, f[0].second, y);
    if (f.size() == 2) return beta_pair_ld(f[0].first, f[0].second, f[1].first, f[1].second, y);
    return cascaded_product(f)(y);
}

// The Gamma-kernel quadrature nodes on (0, 1) never depend on x, so the Beta
// product h can be tabulated there once and reused for every density point.
struct KernelTable {
    std::vector<long double> y, log_y, wh;  // wh = weight * h(y), zero-h nodes dropped
};

const KernelTable& kernel_table(const BetaList& f) {
    thread_local std::vector<std::pair<BetaList, std::unique_ptr<KernelTable>>> cache;
    for (const auto& e : cache) {
        if (e.first == f) return *e.second;
    }
    auto tab = std::make_unique<KernelTable>();
    const long double half = 0.5L;
    for (const TanhSinh::Node& n : kernel_rule().nodes()) {
        const long double x =
            (n.one_plus_t <= 1.0L) ? half * n.one_plus_t : 1.0L - half * n.one_minus_t;
        if (x <= 0.0L || x >= 1.0L) continue;
        const long double h = beta_product_ld(f, x);
        if (h <= 0.0L) continue;
        tab->y.push_back(x);
        tab->log_y.push_back(std::log(x));
        tab->wh.push_back(n.weight * half * h);
    }
    if (cache.size() >= 4) cache.erase(cache.begin());
    cache.emplace_back(f, std::move(tab));
    return *cache.back().second;
}

}  // namespace

bool ProductSpec::gamma_shape_below_min_a() const {
    if (!gamma_shape) return false;
    double min_a = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : beta_factors) min_a = std::min(min_a, a);
    return beta_factors.empty() ? true : *gamma_shape < min_a;
}

void ProductSpec::validate() const {
    if (!gamma_shape && beta_factors.empty()) {
        throw std::invalid_argument("ProductSpec: at least one factor is required");
    }
    if (gamma_shape && !(*gamma_shape > 0.0)) {
        throw std::domain_error("ProductSpec: gamma shape must be positive");
    }
    for (const auto& [a, b] : beta_factors) {
        if (!(a > 0.0) || !(b > 0.0)) {
            throw std::domain_error("ProductSpec: beta shapes must be positive");
        }
    }
    if (beta_factors.size() > 6) {
        throw std::invalid_argument(
            "ProductSpec: more than 6 Beta factors is unsupported (quadrature error compounds)");
    }
}

double product_density_at(const ProductSpec& spec, double x) {
    spec.validate();
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("product_density_at: x must be a finite positive real");
    }
    const long double lx = static_cast<long double>(x);
    if (!spec.gamma_shape) {
        return static_cast<double>(beta_product_ld(spec.beta_factors, lx));
    }
    const long double c = *spec.gamma_shape;
    if (spec.beta_factors.empty()) {
        if (lx >= 1e300L) return 0.0;
        return static_cast<double>(
            std::exp((c - 1.0L) * std::log(lx) - lx - detail::ln_gamma_ld(c)));
    }
    // g(x) = x^{c-1}/Gamma(c) int_0^1 e^{-x/y} y^{-c} h(y) dy
    const KernelTable& tab = kernel_table(spec.beta_factors);
    long double integral = 0.0L;
    for (std::size_t i = 0; i < tab.y.size(); ++i) {
        const long double e = -lx / tab.y[i] - c * tab.log_y[i];
        if (e < -11000.0L) continue;
        integral += tab.wh[i] * std::exp(e);
    }
    const long double pref = std::exp((c - 1.0L) * std::log(lx) - detail::ln_gamma_ld(c));
    return static_cast<double>(pref * integral);
}

GridDensity product_density(const ProductSpec& spec, const std::vector<double>& grid) {
    spec.validate();
    if (grid.empty()) throw std::invalid_argument("product_density: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw std::domain_error("product_density: grid must lie in (0, inf)");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("product_density: grid must be strictly increasing");
        }
    }
    GridDensity out;
    out.nodes = grid;
    out.values.reserve(grid.size());
    for (double x : grid) out.values.push_back(product_density_at(spec, x));
    return out;
}

double GridDensity::interpolate(double x) const {
    if (nodes.empty() || x <= 0.0) return 0.0;
    if (x < nodes.front() || x > nodes.back()) return 0.0;
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const std::size_t i = (it == nodes.begin()) ? 0 : (it - nodes.begin() - 1);
    if (x == nodes[i]) return values[i];
    const std::size_t j = std::min(i + 1, nodes.size() - 1);
    if (i == j) return values[i];
    const double f0 = values[i], f1 = values[j];
    if (f0 <= 0.0 || f1 <= 0.0) {
        // linear fallback where the log form is unusable
        const double t = (x - nodes[i]) / (nodes[j] - nodes[i]);
        return f0 + t * (f1 - f0);
    }
    const double t = (std::log(x) - std::log(nodes[i])) / (std::log(nodes[j]) - std::log(nodes[i]));
    return std::exp(std::log(f0) + t * (std::log(f1) - std::log(f0)));
}

double GridDensity::mass() const {
    if (nodes.size() < 2) return 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        m += 0.5 * (values[i] + values[i + 1]) * (nodes[i + 1] - nodes[i]);
    }
    // left completion: f ~ K x^{p-1} near 0, integral f(x0) x0 / p
    const double x0 = nodes.front();
    if (values.front() > 0.0 && values[1] > 0.0) {
        double p = 1.0 + (std::log(values[1]) - std::log(values[0])) /
                             (std::log(nodes[1]) - std::log(nodes[0]));
        p = std::max(p, 1e-3);
        m += values.front() * x0 / p;
    }
    // right completion: exponential decay rate fitted on the last two nodes
    const std::size_t n = nodes.size();
    if (values[n - 1] > 0.0 && values[n - 2] > 0.0) {
        const double lam = (std::log(values[n - 2]) - std::log(values[n - 1])) /
                           (nodes[n - 1] - nodes[n - 2]);
        if (lam > 1e-12) m += values[n - 1] / lam;
    }
    return m;
}

void GridDensity::write_csv(std::ostream& os) const {
    os << "x,density\n";
    char buf[64];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", nodes[i], values[i]);
        os << buf;
    }
}

std::vector<double> default_grid(const ProductSpec& spec) {
    spec.validate();
    // log-moment estimates of the product
    double mu = 0.0, var = 0.0;
    double min_shape = std::numeric_limits<double>::infinity();
    if (spec.gamma_shape) {
        mu += digamma(*spec.gamma_shape);
        var += trigamma(*spec.gamma_shape);
        min_shape = std::min(min_shape, *spec.gamma_shape);
    }
    for (const auto& [a, b] : spec.beta_factors) {
        mu += digamma(a) - digamma(a + b);
        var += trigamma(a) - trigamma(a + b);
        min_shape = std::min(min_shape, a);
    }
    const double sigma = std::sqrt(std::max(var, 1e-12));
    // left end: the smaller of the lognormal estimate and the power-law
    // quantile x ~ (1e-6)^{1/p} e^{mu}
    double lo = std::exp(mu - 8.0 * sigma);
    lo = std::min(lo, std::exp(std::log(1e-6) / min_shape + mu + 1.0));
    double hi = std::exp(mu + 8.0 * sigma);
    if (!spec.gamma_shape) {
        // support ends at 1; stop at the (1 - 1e-6) quantile of the upper tail
        double bsum = 0.0;
        for (const auto& [a, b] : spec.beta_factors) bsum += b;
        hi = 1.0 - std::pow(1e-6, 1.0 / std::max(bsum, 1e-3));
        hi = std::min(hi, 1.0 - 1e-12);
    }
    if (!(hi > lo)) hi = lo * 10.0;

    const double decades = std::log10(hi / lo);
    const int n = std::max(16, static_cast<int>(std::ceil(decades * 400.0)) + 1);
    std::vector<double> grid;
    grid.reserve(n);
    const double step = (std::log(hi) - std::log(lo)) / (n - 1);
    for (int i = 0; i < n; ++i) grid.push_back(std::exp(std::log(lo) + i * step));
    return grid;
}

GridDensity tilted_density(const ProductSpec& spec, double c, const std::vector<double>& grid) {
    if (spec.gamma_shape || spec.beta_factors.size() != 1) {
        throw std::invalid_argument("tilted_density: spec must hold exactly one Beta factor");
    }
    const double a = spec.beta_factors[0].first;
    const double b = spec.beta_factors[0].second;
    if (!(c < a)) {
        throw std::domain_error("tilted_density: requires c < a, got c = " + std::to_string(c) +
                                ", a = " + std::to_string(a));
    }
    // norm = int y^{-c} f(y) dy = B(a-c, b) / B(a, b)
    const double log_norm = static_cast<double>(ln_beta(a - c, b) - ln_beta(a, b));
    GridDensity out;
    out.nodes = grid;
    out.values.reserve(grid.size());
    for (double y : grid) {
        if (y <= 0.0 || y >= 1.0) {
            out.values.push_back(0.0);
            continue;
        }
        const double lf = static_cast<double>(
            (a - 1.0L) * std::log(static_cast<long double>(y)) +
            (b - 1.0L) * std::log1p(-static_cast<long double>(y)) - ln_beta(a, b));
        out.values.push_back(std::exp(lf - c * std::log(y) - log_norm));
    }
    return out;
}

double product_mellin(const ProductSpec& spec, double s) {
    spec.validate();
    if (!std::isfinite(s)) throw std::domain_error("product_mellin: s must be finite");
    long double total = 0.0L;
    if (spec.gamma_shape) {
        const long double c = *spec.gamma_shape;
        if (c + s <= 0.0L) throw std::domain_error("product_mellin: s out of range for the Gamma factor");
        total += detail::ln_gamma_ld(c + s) - detail::ln_gamma_ld(c);
    }
    for (const auto& [a, b] : spec.beta_factors) {
        if (a + s <= 0.0L) throw std::domain_error("product_mellin: s out of range for a Beta factor");
        total += detail::ln_gamma_ld(a + s) - detail::ln_gamma_ld(a) +
                 detail::ln_gamma_ld(a + b) - detail::ln_gamma_ld(a + b + s);
    }
    return static_cast<double>(std::exp(total));
}

}  // namespace stablehcm
