#pragma once

#include <cstdint>
#include <random>

namespace stablehcm {

// Seeded generator with the exact samplers the library needs.  Every draw
// method consumes entropy from the single mt19937_64 stream, so a fixed seed
// reproduces the full draw sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform on the open interval (0, 1)
    double uniform();

    // standard exponential
    double exponential();

    // standard normal (Box-Muller, cached pair)
    double normal();

    // Gamma(shape c, unit scale); Marsaglia-Tsang, exact for all c > 0
    double gamma(double c);

    // Beta(a, b) via two Gamma draws
    double beta(double a, double b);

private:
    std::mt19937_64 gen_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace stablehcm
