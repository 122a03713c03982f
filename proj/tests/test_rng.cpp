#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablehcm/rng.hpp"

using namespace stablehcm;

TEST_CASE("fixed seed reproduces the draw sequence") {
    Rng a(12345), b(12345), c(54321);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const double ua = a.uniform();
        all_equal = all_equal && (ua == b.uniform());
        any_diff = any_diff || (ua != c.uniform());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform stays strictly inside (0,1)") {
    Rng r(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 0.005);
}

TEST_CASE("exponential and normal moments") {
    Rng r(99);
    const int n = 100000;
    double esum = 0.0, nsum = 0.0, n2sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = r.exponential();
        REQUIRE(e > 0.0);
        esum += e;
        const double z = r.normal();
        nsum += z;
        n2sum += z * z;
    }
    CHECK(std::fabs(esum / n - 1.0) < 0.02);
    CHECK(std::fabs(nsum / n) < 0.02);
    CHECK(std::fabs(n2sum / n - 1.0) < 0.03);
}

TEST_CASE("gamma moments for shapes above and below 1") {
    const int n = 100000;
    for (double c : {0.3, 1.0, 2.5, 7.0}) {
        Rng r(2024);
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = r.gamma(c);
            REQUIRE(g > 0.0);
            sum += g;
            sq += g * g;
        }
        const double mean = sum / n;
        const double var = sq / n - mean * mean;
        // mean = c, var = c; 6 standard errors of slack
        CHECK(std::fabs(mean - c) < 6.0 * std::sqrt(c / n));
        CHECK(std::fabs(var - c) < 0.15 * std::max(1.0, c));
    }
}

TEST_CASE("beta moments and support") {
    const int n = 100000;
    struct Case {
        double a, b;
    };
    for (const Case& cs : {Case{0.5, 0.5}, Case{2.0, 3.0}, Case{1.3, 0.4}}) {
        Rng r(31337);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = r.beta(cs.a, cs.b);
            REQUIRE(x > 0.0);
            REQUIRE(x < 1.0);
            sum += x;
        }
        const double mean_ref = cs.a / (cs.a + cs.b);
        const double var = cs.a * cs.b /
                           ((cs.a + cs.b) * (cs.a + cs.b) * (cs.a + cs.b + 1.0));
        CHECK(std::fabs(sum / n - mean_ref) < 6.0 * std::sqrt(var / n));
    }
}
