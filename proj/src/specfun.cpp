#include "stablehcm/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stablehcm {

namespace {

void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": argument must be a finite positive real, got " +
                                std::to_string(x));
    }
}

constexpr long double half_ln_two_pi = 0.918938533204672741780329736405617639862L;

// Stirling tail coefficients B_{2k} / (2k (2k-1)) for ln Gamma.
constexpr long double lg_tail[] = {
    1.0L / 12.0L,    -1.0L / 360.0L,     1.0L / 1260.0L, -1.0L / 1680.0L,
    1.0L / 1188.0L,  -691.0L / 360360.0L, 1.0L / 156.0L,  -3617.0L / 122400.0L,
};

// B_{2k} / (2k) for the digamma asymptotic series.
constexpr long double dg_tail[] = {
    1.0L / 12.0L,   -1.0L / 120.0L,      1.0L / 252.0L, -1.0L / 240.0L,
    1.0L / 132.0L,  -691.0L / 32760.0L,  1.0L / 12.0L,  -3617.0L / 8160.0L,
};

// B_{2k} for the trigamma asymptotic series.
constexpr long double tg_tail[] = {
    1.0L / 6.0L,   -1.0L / 30.0L,      1.0L / 42.0L, -1.0L / 30.0L,
    5.0L / 66.0L,  -691.0L / 2730.0L,  7.0L / 6.0L,  -3617.0L / 510.0L,
};

constexpr long double shift_threshold = 13.0L;

}  // namespace

namespace detail {

long double ln_gamma_ld(long double x) {
    long double shift = 0.0L;
    while (x < shift_threshold) {
        shift -= std::log(x);
        x += 1.0L;
    }
    const long double z = 1.0L / (x * x);
    long double tail = 0.0L;
    for (int k = 7; k >= 0; --k) tail = tail * z + lg_tail[k];
    return shift + (x - 0.5L) * std::log(x) - x + half_ln_two_pi + tail / x;
}

long double digamma_ld(long double x) {
    long double shift = 0.0L;
    while (x < shift_threshold) {
        shift -= 1.0L / x;
        x += 1.0L;
    }
    const long double z = 1.0L / (x * x);
    long double tail = 0.0L;
    for (int k = 7; k >= 0; --k) tail = tail * z + dg_tail[k];
    return shift + std::log(x) - 0.5L / x - tail * z;
}

long double trigamma_ld(long double x) {
    long double shift = 0.0L;
    while (x < shift_threshold) {
        shift += 1.0L / (x * x);
        x += 1.0L;
    }
    const long double z = 1.0L / (x * x);
    long double tail = 0.0L;
    for (int k = 7; k >= 0; --k) tail = tail * z + tg_tail[k];
    return shift + 1.0L / x + 0.5L * z + tail * z / x;
}

long double sinpi_prod(double k, double alpha) {
    // k * alpha exactly as a double-double pair
    const double hi = k * alpha;
    const double lo = std::fma(k, alpha, -hi);
    // reduce hi mod 2 (exact: q and hi share exponent range, Sterbenz)
    const double q = 2.0 * std::nearbyint(hi * 0.5);
    long double r = static_cast<long double>(hi - q) + static_cast<long double>(lo);
    // fold into [-1/2, 1/2]; sin(pi r) is symmetric about r = 1/2, so no sign flip
    if (r > 0.5L) {
        r = 1.0L - r;
    } else if (r < -0.5L) {
        r = -1.0L - r;
    }
    constexpr long double pi_ld = 3.141592653589793238462643383279502884197L;
    return std::sin(pi_ld * r);
}

}  // namespace detail

double ln_gamma(double x) {
    require_positive(x, "ln_gamma");
    return static_cast<double>(detail::ln_gamma_ld(static_cast<long double>(x)));
}

double digamma(double x) {
    require_positive(x, "digamma");
    return static_cast<double>(detail::digamma_ld(static_cast<long double>(x)));
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    return static_cast<double>(detail::trigamma_ld(static_cast<long double>(x)));
}

}  // namespace stablehcm
