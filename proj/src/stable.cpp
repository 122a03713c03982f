#include "stablehcm/stable.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "stablehcm/quadrature.hpp"
#include "stablehcm/rng.hpp"
#include "stablehcm/specfun.hpp"

namespace stablehcm {

namespace {

constexpr long double pi_ld = 3.141592653589793238462643383279502884197L;
constexpr int series_term_cap = 100000;
constexpr double cancellation_limit = 1e6;
// term exponents past this overflow long double well before the cap
constexpr long double term_exponent_limit = 11000.0L;

void require_positive_x(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": x must be a finite positive real, got " +
                                std::to_string(x));
    }
}

struct SeriesResult {
    long double value = 0.0L;
    long double max_term = 0.0L;
    int terms = 0;
    bool converged = false;
    bool overflowed = false;
};

SeriesResult sum_series(double alpha, double x) {
    SeriesResult r;
    const long double lx = std::log(static_cast<long double>(x));
    long double sum = 0.0L;
    int quiet = 0;
    for (int k = 1; k <= series_term_cap; ++k) {
        const long double ka = static_cast<long double>(k) * alpha;
        const long double log_mag = detail::ln_gamma_ld(ka + 1.0L) -
                                    detail::ln_gamma_ld(static_cast<long double>(k) + 1.0L) -
                                    (ka + 1.0L) * lx;
        if (log_mag > term_exponent_limit) {
            r.value = sum;
            r.terms = k;
            r.overflowed = true;
            return r;
        }
        const long double s = detail::sinpi_prod(static_cast<double>(k), alpha);
        const long double term = (k % 2 ? 1.0L : -1.0L) * std::exp(log_mag) * s;
        sum += term;
        const long double mag = std::fabs(term);
        if (mag > r.max_term) r.max_term = mag;
        if (mag < 1e-15L * std::fabs(sum)) {
            if (++quiet >= 3) {
                r.value = sum;
                r.terms = k;
                r.converged = true;
                return r;
            }
        } else {
            quiet = 0;
        }
    }
    r.value = sum;
    r.terms = series_term_cap;
    return r;
}

// peak-term location of the series at this (alpha, x); the series is only
// worth attempting when the peak is reached well before the term cap
bool series_looks_tractable(double alpha, double x) {
    const double L = -std::log(x);
    if (L <= 0.0) return true;  // x >= 1: terms decay from the start
    const double ln_kstar = (alpha * std::log(alpha) + alpha * L) / (1.0 - alpha);
    if (ln_kstar > std::log(0.5 * series_term_cap)) return false;
    const double kstar = std::exp(std::max(ln_kstar, 0.0)) + 1.0;
    const double peak = static_cast<double>(detail::ln_gamma_ld(alpha * kstar + 1.0L)) -
                        static_cast<double>(detail::ln_gamma_ld(kstar + 1.0L)) +
                        (alpha * kstar + 1.0) * L;
    return peak < static_cast<double>(term_exponent_limit);
}

// Fixed tanh-sinh evaluation of the integral representation.  Nodes and
// ln A values depend only on alpha, so they are cached per instance.
class ZolotarevDensity {
public:
    ZolotarevDensity(double alpha, int levels = 6) : alpha_(alpha), rule_(levels) {
        const long double a = alpha;
        const long double half = 0.5L * pi_ld;
        for (const TanhSinh::Node& n : rule_.nodes()) {
            const long double u = (n.one_plus_t <= 1.0L) ? half * n.one_plus_t
                                                         : pi_ld - half * n.one_minus_t;
            if (u <= 0.0L || u >= pi_ld) continue;
            log_a_.push_back(detail::zolotarev_log_a(u, a));
            weight_.push_back(n.weight * half);
        }
    }

    double operator()(double x) const {
        const long double a = alpha_;
        const long double r = a / (1.0L - a);
        const long double lx = std::log(static_cast<long double>(x));
        const long double log_xb = -r * lx;               // ln x^{-alpha/(1-alpha)}
        long double sum = 0.0L;
        for (std::size_t i = 0; i < log_a_.size(); ++i) {
            const long double la = log_a_[i];
            const long double t = la + log_xb;            // ln(A(u) x^{-r})
            if (t > 40.0L) continue;                      // exponent -e^t below any floor
            const long double e = la - std::exp(t);
            if (e < -term_exponent_limit) continue;
            sum += weight_[i] * std::exp(e);
        }
        const long double pref = a / ((1.0L - a) * pi_ld) * std::exp((-1.0L / (1.0L - a)) * lx);
        return static_cast<double>(pref * sum);
    }

    double alpha() const { return alpha_; }

private:
    double alpha_;
    TanhSinh rule_;
    std::vector<long double> log_a_;
    std::vector<long double> weight_;
};

const ZolotarevDensity& cached_integral_evaluator(double alpha) {
    thread_local std::vector<std::unique_ptr<ZolotarevDensity>> cache;
    for (const auto& e : cache) {
        if (e->alpha() == alpha) return *e;
    }
    if (cache.size() >= 8) cache.erase(cache.begin());
    cache.push_back(std::make_unique<ZolotarevDensity>(alpha));
    return *cache.back();
}

}  // namespace

StableParams::StableParams(double a) : alpha(a) {
    if (!(a > 0.0 && a < 1.0) || !std::isfinite(a)) {
        throw std::domain_error("StableParams: alpha must lie in (0, 1), got " + std::to_string(a));
    }
}

namespace detail {

long double zolotarev_log_a(long double u, long double alpha) {
    // A(u) = sin((1-a)u) sin(a u)^{a/(1-a)} / sin(u)^{1/(1-a)}
    // via ln A = ln(1-a) + r ln a + ln s((1-a)u) + r ln s(a u) - (1+r) ln s(u),
    // s(z) = sin(z)/z, which removes the ln u cancellation near u = 0.
    const long double r = alpha / (1.0L - alpha);
    auto log_sinc = [](long double z) { return std::log(std::sin(z) / z); };
    return std::log(1.0L - alpha) + r * std::log(alpha) + log_sinc((1.0L - alpha) * u) +
           r * log_sinc(alpha * u) - (1.0L + r) * log_sinc(u);
}

}  // namespace detail

double density_series(const StableParams& p, double x) {
    require_positive_x(x, "density_series");
    SeriesResult r = sum_series(p.alpha, x);
    if (!r.converged) {
        throw ConvergenceError("density_series: series did not converge within " +
                               std::to_string(r.terms) + " terms at alpha=" +
                               std::to_string(p.alpha) + ", x=" + std::to_string(x) +
                               (r.overflowed ? " (terms exceed the floating range)" : ""));
    }
    const double v = static_cast<double>(r.value / pi_ld);
    return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

double density_integral(const StableParams& p, double x) {
    require_positive_x(x, "density_integral");
    return cached_integral_evaluator(p.alpha)(x);
}

double density(const StableParams& p, double x) {
    require_positive_x(x, "density");
    if (series_looks_tractable(p.alpha, x)) {
        SeriesResult r = sum_series(p.alpha, x);
        if (r.converged && std::fabs(r.value) > 0.0L &&
            r.max_term < cancellation_limit * std::fabs(r.value)) {
            const double v = static_cast<double>(r.value / pi_ld);
            return v < 0.0 ? 0.0 : v;
        }
    }
    const double v = cached_integral_evaluator(p.alpha)(x);
    return v < 0.0 ? 0.0 : v;
}

double density_half(double x) {
    require_positive_x(x, "density_half");
    constexpr double inv_two_sqrt_pi = 0.28209479177387814347403972578039;
    return inv_two_sqrt_pi * std::pow(x, -1.5) * std::exp(-0.25 / x);
}

double mellin_inverse_moment(const StableParams& p, double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw std::domain_error("mellin_inverse_moment: s must be >= 0, got " + std::to_string(s));
    }
    return std::exp(ln_gamma(1.0 + s / p.alpha) - ln_gamma(1.0 + s));
}

std::pair<double, double> laplace_check(const StableParams& p, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("laplace_check: lambda must be positive, got " +
                                std::to_string(lambda));
    }
    const StableParams params = p;
    auto integrand = [params, lambda](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(-lambda * x) * density(params, x);
    };
    const double quad = integrate_to_inf(integrand, 0.0, 1e-10, 1e-9, 1.0);
    const double target = std::exp(-std::pow(lambda, p.alpha));
    return {quad, target};
}

std::vector<double> sample_oracle(const StableParams& p, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_oracle: n must be >= 1");
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    const long double a = p.alpha;
    const long double power = (1.0L - a) / a;
    for (std::size_t i = 0; i < n; ++i) {
        const long double u = pi_ld * static_cast<long double>(rng.uniform());
        const long double e = static_cast<long double>(rng.exponential());
        const long double log_z = power * (detail::zolotarev_log_a(u, a) - std::log(e));
        out.push_back(static_cast<double>(std::exp(log_z)));
    }
    return out;
}

}  // namespace stablehcm
