#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stablehcm/stable.hpp"

namespace stablehcm {

// One Beta(a, b) factor carrying its multiplicative constant as a log.
struct BetaFactor {
    double a;
    double b;
    double log_scale;
};

// One Gamma(c) factor carrying its multiplicative constant as a log.
struct GammaFactor {
    double c;
    double log_scale;
};

enum class PlanTarget {
    inverse_stable,         // law of Z_alpha^{-1}
    gamma,                  // law of Gamma_a
    theorem_decomposition,  // Z_alpha^{-1} rearranged as Gamma_alpha x Beta product
    power_alpha,            // law of Z_alpha^{-alpha}
};

const char* plan_target_name(PlanTarget t);

// A truncated distributional identity: a global constant times independent
// Gamma factors times an ordered list of Beta factors.
struct FactorizationPlan {
    PlanTarget target;
    double alpha = 0.0;     // set for the stable-law targets
    double param_a = 0.0;   // set for target gamma
    double param_b = 0.0;
    int truncation_N = 0;
    double global_log_scale = 0.0;
    std::vector<GammaFactor> gamma_factors;
    std::vector<BetaFactor> beta_factors;

    std::string to_json() const;
};

// Z_alpha^{-1} as exp(gamma(1 - 1/alpha)) prod_{n<N} a_n B_{alpha+n alpha, 1-alpha},
// a_n = exp(psi(1 + n alpha) - psi(alpha + n alpha)).  Every factor is mean
// centered: E[log(a_n B)] = 0.
FactorizationPlan inverse_stable_plan(const StableParams& p, int N);

// Gamma_a as exp(psi(a)) prod_{n<N} b_n B_{a+nb, b}, b_n = exp(psi(a+b+nb) - psi(a+nb)).
FactorizationPlan gamma_plan(double a, double b, int N);

// Z_alpha^{-1} for alpha < 1/2 strictly, rearranged as
// exp(gamma(1-1/alpha) - psi(alpha)) x Gamma_alpha x prod_{n<N} e^{psi(1+n a)-psi(2a+n a)} B_{2a+n a, 1-2a}.
FactorizationPlan decomposition_plan(const StableParams& p, int N);

// Z_alpha^{-alpha} as exp(gamma(alpha-1)) prod_{n<N} b_n B_{1+n/alpha, 1/alpha-1}
// with the mean-centering scale b_n = exp(psi((n+1)/alpha) - psi(1+n/alpha)).
FactorizationPlan power_plan(const StableParams& p, int N);

// B_{a, b} split at b_part into B_{a, b_part} x B_{a+b_part, b-b_part}; the
// Mellin transforms multiply back to the input identically in s.
std::pair<BetaFactor, BetaFactor> split_beta(const BetaFactor& f, double b_part);

// E[plan^s] in log space: s*global + sum of factor contributions.
double log_plan_mellin(const FactorizationPlan& plan, double s);
double plan_mellin(const FactorizationPlan& plan, double s);

// n independent draws of the truncated product.
std::vector<double> sample_plan(const FactorizationPlan& plan, std::size_t n, std::uint64_t seed);

// sum_{n>=N} (psi'(alpha + n alpha) - psi'(1 + n alpha)): the total variance of
// the dropped log factors.  Direct summation plus a closed-form digamma tail;
// the result deliberately underestimates the infinite sum by O(1/M^2) with
// M ~ 2e5, far below every tolerance used against it.
double truncation_tail_variance(const StableParams& p, long N);

// one summand of the above
double tail_variance_term(const StableParams& p, long n);

// Quadrature value of the bounding integral
//   int_0^inf x e^{-a x}(1-e^{-(1-a)x}) / ((1-e^{-x})(1-e^{-a x})) dx,
// which the tail-variance sum at N = 0 telescopes into.
double tail_variance_bounding_integral(double alpha);

// (exp(-(n-1) gamma - sum_{k<n} psi(k/n)), n^n); equal to 1e-10 relative.
std::pair<double, double> williams_constant_check(int n);

// (psi(a) s + int_0^inf (e^{-st} - 1 + st) e^{-at} / (t (1 - e^{-t})) dt,
//  ln Gamma(a+s) - ln Gamma(a)); both as log values, equal to 1e-8.
std::pair<double, double> malmsten_check(double a, double s);

}  // namespace stablehcm
