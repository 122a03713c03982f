#include "stablehcm/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stablehcm {

double Rng::uniform() {
    // 53 random bits, offset by half an ulp so 0 and 1 are never returned
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
}

double Rng::exponential() {
    return -std::log(uniform());
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

double Rng::gamma(double c) {
    if (!(c > 0.0)) {
        throw std::domain_error("Rng::gamma: shape must be positive, got " + std::to_string(c));
    }
    if (c < 1.0) {
        // boost: Gamma(c) = Gamma(c+1) * U^{1/c}
        const double g = gamma(c + 1.0);
        return g * std::pow(uniform(), 1.0 / c);
    }
    const double d = c - 1.0 / 3.0;
    const double k = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + k * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::beta(double a, double b) {
    const double ga = gamma(a);
    const double gb = gamma(b);
    return ga / (ga + gb);
}

}  // namespace stablehcm
