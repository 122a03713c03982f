#include "stablehcm/factorization.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "stablehcm/quadrature.hpp"
#include "stablehcm/rng.hpp"
#include "stablehcm/specfun.hpp"

namespace stablehcm {

namespace {

void require_count(int N, const char* fn) {
    if (N < 1) {
        throw std::invalid_argument(std::string(fn) + ": truncation index must be >= 1, got " +
                                    std::to_string(N));
    }
}

}  // namespace

const char* plan_target_name(PlanTarget t) {
    switch (t) {
        case PlanTarget::inverse_stable: return "inverse-stable";
        case PlanTarget::gamma: return "gamma";
        case PlanTarget::theorem_decomposition: return "theorem-decomposition";
        case PlanTarget::power_alpha: return "power-alpha";
    }
    return "?";
}

std::string FactorizationPlan::to_json() const {
    nlohmann::json j;
    j["target"] = plan_target_name(target);
    if (target == PlanTarget::gamma) {
        j["a"] = param_a;
        j["b"] = param_b;
    } else {
        j["alpha"] = alpha;
    }
    j["N"] = truncation_N;
    j["global_log_scale"] = global_log_scale;
    nlohmann::json factors = nlohmann::json::array();
    for (const GammaFactor& g : gamma_factors) {
        factors.push_back({{"kind", "gamma"}, {"c", g.c}, {"log_scale", g.log_scale}});
    }
    for (const BetaFactor& b : beta_factors) {
        factors.push_back({{"kind", "beta"}, {"a", b.a}, {"b", b.b}, {"log_scale", b.log_scale}});
    }
    j["factors"] = std::move(factors);
    return j.dump(2);
}

FactorizationPlan inverse_stable_plan(const StableParams& p, int N) {
    require_count(N, "inverse_stable_plan");
    const double a = p.alpha;
    FactorizationPlan plan;
    plan.target = PlanTarget::inverse_stable;
    plan.alpha = a;
    plan.truncation_N = N;
    plan.global_log_scale = euler_gamma * (1.0 - 1.0 / a);
    plan.beta_factors.reserve(N);
    for (int n = 0; n < N; ++n) {
        const double fa = a + n * a;
        const double fb = 1.0 - a;
        plan.beta_factors.push_back({fa, fb, digamma(1.0 + n * a) - digamma(fa)});
    }
    return plan;
}

FactorizationPlan gamma_plan(double a, double b, int N) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("gamma_plan: shapes must be positive reals");
    }
    require_count(N, "gamma_plan");
    FactorizationPlan plan;
    plan.target = PlanTarget::gamma;
    plan.param_a = a;
    plan.param_b = b;
    plan.truncation_N = N;
    plan.global_log_scale = digamma(a);
    plan.beta_factors.reserve(N);
    for (int n = 0; n < N; ++n) {
        const double fa = a + n * b;
        plan.beta_factors.push_back({fa, b, digamma(fa + b) - digamma(fa)});
    }
    return plan;
}

FactorizationPlan decomposition_plan(const StableParams& p, int N) {
    const double a = p.alpha;
    if (!(a < 0.5)) {
        throw std::domain_error(
            "decomposition_plan: requires alpha < 1/2 strictly (the Beta parameter 1 - 2 alpha "
            "degenerates at the boundary), got alpha = " + std::to_string(a));
    }
    require_count(N, "decomposition_plan");
    FactorizationPlan plan;
    plan.target = PlanTarget::theorem_decomposition;
    plan.alpha = a;
    plan.truncation_N = N;
    plan.global_log_scale = euler_gamma * (1.0 - 1.0 / a) - digamma(a);
    plan.gamma_factors.push_back({a, 0.0});
    plan.beta_factors.reserve(N);
    for (int n = 0; n < N; ++n) {
        const double fa = 2.0 * a + n * a;
        plan.beta_factors.push_back({fa, 1.0 - 2.0 * a, digamma(1.0 + n * a) - digamma(fa)});
    }
    return plan;
}

FactorizationPlan power_plan(const StableParams& p, int N) {
    require_count(N, "power_plan");
    const double a = p.alpha;
    FactorizationPlan plan;
    plan.target = PlanTarget::power_alpha;
    plan.alpha = a;
    plan.truncation_N = N;
    plan.global_log_scale = euler_gamma * (a - 1.0);
    plan.beta_factors.reserve(N);
    for (int n = 0; n < N; ++n) {
        const double fa = 1.0 + n / a;
        const double fb = 1.0 / a - 1.0;
        plan.beta_factors.push_back({fa, fb, digamma((n + 1) / a) - digamma(fa)});
    }
    return plan;
}

std::pair<BetaFactor, BetaFactor> split_beta(const BetaFactor& f, double b_part) {
    if (!(b_part > 0.0) || !(b_part < f.b)) {
        throw std::invalid_argument("split_beta: b_part must lie strictly inside (0, b)");
    }
    // the incoming log scale stays on the first piece; mean centering of the
    // pieces is the caller's concern, the Mellin identity holds regardless
    BetaFactor first{f.a, b_part, f.log_scale};
    BetaFactor second{f.a + b_part, f.b - b_part, 0.0};
    return {first, second};
}

double log_plan_mellin(const FactorizationPlan& plan, double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw std::domain_error("plan_mellin: s must be >= 0, got " + std::to_string(s));
    }
    long double total = static_cast<long double>(plan.global_log_scale) * s;
    for (const GammaFactor& g : plan.gamma_factors) {
        total += detail::ln_gamma_ld(g.c + s) - detail::ln_gamma_ld(g.c) +
                 static_cast<long double>(g.log_scale) * s;
    }
    for (const BetaFactor& b : plan.beta_factors) {
        total += detail::ln_gamma_ld(b.a + s) - detail::ln_gamma_ld(b.a) +
                 detail::ln_gamma_ld(b.a + b.b) - detail::ln_gamma_ld(b.a + b.b + s) +
                 static_cast<long double>(b.log_scale) * s;
    }
    return static_cast<double>(total);
}

double plan_mellin(const FactorizationPlan& plan, double s) {
    return std::exp(log_plan_mellin(plan, s));
}

std::vector<double> sample_plan(const FactorizationPlan& plan, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_plan: n must be >= 1");
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double log_prod = plan.global_log_scale;
        for (const GammaFactor& g : plan.gamma_factors) {
            log_prod += g.log_scale + std::log(rng.gamma(g.c));
        }
        for (const BetaFactor& b : plan.beta_factors) {
            log_prod += b.log_scale + std::log(rng.beta(b.a, b.b));
        }
        out.push_back(std::exp(log_prod));
    }
    return out;
}

double tail_variance_term(const StableParams& p, long n) {
    const long double a = p.alpha;
    const long double na = static_cast<long double>(n) * a;
    return static_cast<double>(detail::trigamma_ld(a + na) - detail::trigamma_ld(1.0L + na));
}

double truncation_tail_variance(const StableParams& p, long N) {
    if (N < 0) throw std::invalid_argument("truncation_tail_variance: N must be >= 0");
    const long double a = p.alpha;
    const long M = N + 200000;
    long double sum = 0.0L;
    for (long n = N; n < M; ++n) {
        const long double na = static_cast<long double>(n) * a;
        const long double term = detail::trigamma_ld(a + na) - detail::trigamma_ld(1.0L + na);
        sum += term;
        if (term < 1e-16L && n > N + 16) {
            // below the resolution anyone downstream asks for; the closed-form
            // tail below absorbs the rest
            return static_cast<double>(
                sum + (detail::digamma_ld(1.0L + (n + 1) * a) - detail::digamma_ld(a + (n + 1) * a)) / a);
        }
    }
    const long double tail =
        (detail::digamma_ld(1.0L + static_cast<long double>(M) * a) -
         detail::digamma_ld(a + static_cast<long double>(M) * a)) / a;
    return static_cast<double>(sum + tail);
}

double tail_variance_bounding_integral(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("tail_variance_bounding_integral: alpha must lie in (0, 1)");
    }
    const double a = alpha;
    auto integrand = [a](double x) {
        if (x <= 0.0) return (1.0 - a) / a;
        const double num = x * std::exp(-a * x) * (-std::expm1(-(1.0 - a) * x));
        const double den = (-std::expm1(-x)) * (-std::expm1(-a * x));
        return num / den;
    };
    return integrate_to_inf(integrand, 0.0, 1e-13, 1e-12, 2.0);
}

std::pair<double, double> williams_constant_check(int n) {
    if (n < 2) throw std::invalid_argument("williams_constant_check: n must be >= 2");
    long double exponent = -(static_cast<long double>(n) - 1.0L) *
                           static_cast<long double>(euler_gamma);
    for (int k = 1; k < n; ++k) {
        exponent -= detail::digamma_ld(static_cast<long double>(k) / n);
    }
    const double lhs = static_cast<double>(std::exp(exponent));
    const double rhs = std::pow(static_cast<double>(n), static_cast<double>(n));
    return {lhs, rhs};
}

std::pair<double, double> malmsten_check(double a, double s) {
    if (!(a > 0.0) || !(s > 0.0) || !std::isfinite(a) || !std::isfinite(s)) {
        throw std::domain_error("malmsten_check: a and s must be positive reals");
    }
    auto integrand = [a, s](double t) {
        if (t <= 0.0) return 0.5 * s * s;
        double num;
        if (s * t < 1e-4) {
            const double st = s * t;
            num = st * st * (0.5 - st / 6.0 + st * st / 24.0);
        } else {
            num = std::expm1(-s * t) + s * t;
        }
        const double den = t * (-std::expm1(-t));
        return num * std::exp(-a * t) / den;
    };
    const double integral = integrate(integrand, 0.0, 1.0, 1e-13, 1e-12) +
                            integrate_to_inf(integrand, 1.0, 1e-13, 1e-12, 1.0);
    const double lhs = digamma(a) * s + integral;
    const double rhs = ln_gamma(a + s) - ln_gamma(a);
    return {lhs, rhs};
}

}  // namespace stablehcm
