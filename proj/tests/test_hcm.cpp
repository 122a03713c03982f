#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "stablehcm/hcm.hpp"
#include "stablehcm/stable.hpp"

using namespace stablehcm;

TEST_CASE("v_of_w solves v + 1/v = w") {
    CHECK(v_of_w(2.0) == 1.0);
    CHECK(std::fabs(v_of_w(2.5) - 2.0) < 1e-15);
    CHECK(std::fabs(v_of_w(10.0 / 3.0) - 3.0) < 5e-15);
    for (double w = 2.0; w <= 1e6; w *= 3.7) {
        const double v = v_of_w(w);
        CHECK(v >= 1.0);
        CHECK(std::fabs(v + 1.0 / v - w) <= 1e-12 * w);
    }
    CHECK_THROWS_AS(v_of_w(1.999), std::domain_error);
    CHECK_THROWS_AS(v_of_w(std::nan("")), std::domain_error);
}

TEST_CASE("exponential density: every difference order is exact") {
    // f = e^{-x}: H_u(w) = e^{-u(v + 1/v)} = e^{-uw}, so
    // (-1)^k Delta^k H = e^{-uw} (1 - e^{-u delta})^k > 0.
    const double u = 0.7, delta = 0.05;
    const auto f = [](double x) { return std::exp(-x); };
    const CmReport rep = hcm_check(f, u, 2.0, 6.0, 81, delta, 5, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.witnesses.empty());
    REQUIRE(rep.order_pass.size() == 6);
    for (bool b : rep.order_pass) CHECK(b);
    CHECK(rep.u == u);
    CHECK(rep.n_points == 81);

    // the H values the checker consumes reproduce e^{-uw} exactly enough that
    // the k-th signed difference matches the closed form
    const double q = 1.0 - std::exp(-u * delta);
    for (int k = 1; k <= 5; ++k) {
        double acc = 0.0;  // (-1)^k Delta^k H at w = 2, from first principles
        for (int j = 0, sign = 1; j <= k; ++j, sign = -sign) {
            double binom = 1.0;
            for (int i = 0; i < j; ++i) binom = binom * (k - i) / (i + 1);
            const double w = 2.0 + j * delta;
            acc += sign * binom * std::exp(-u * (v_of_w(w) + 1.0 / v_of_w(w)));
        }
        const double ref = std::exp(-u * 2.0) * std::pow(q, k);
        // cancellation noise in the k-th difference scales with H, not with
        // the difference itself
        CHECK(std::fabs(acc - ref) <= 1e-13 * std::exp(-u * 2.0));
    }
}

TEST_CASE("Gamma(2) density passes deep difference orders") {
    const auto f = [](double x) { return x * std::exp(-x); };
    const CmReport rep = hcm_check(f, 1.0, 2.0, 10.0, 161, 0.05, 8, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.witnesses.empty());
}

TEST_CASE("stable density at alpha = 1/2 is hyperbolically monotone") {
    const auto f = [](double x) { return density_half(x); };
    for (double u : {0.25, 1.0, 4.0}) {
        const CmReport rep = hm_check(f, {u}, 2.0, 50.0, 200, 1e-12);
        CHECK(rep.pass);
        CHECK(rep.witnesses.empty());
    }
}

TEST_CASE("a rigged non-monotone profile is caught with located witnesses") {
    // bump at w ~ 3 in the hyperbola coordinate: H(w) rises there
    const auto f = [](double x) {
        return std::exp(-x) * (1.0 + 0.5 * std::exp(-40.0 * (x - 3.0) * (x - 3.0)));
    };
    const CmReport rep = hm_check(f, {1.0}, 2.0, 6.0, 161, 1e-9);
    CHECK_FALSE(rep.pass);
    REQUIRE_FALSE(rep.witnesses.empty());
    bool near_bump = false;
    for (const CmWitness& wit : rep.witnesses) {
        CHECK(wit.k == 1);
        CHECK(wit.value > 0.0);
        // u v = 3  =>  v ~ 3, w = v + 1/v ~ 10/3
        if (std::fabs(wit.w - 10.0 / 3.0) < 0.35) near_bump = true;
    }
    CHECK(near_bump);

    // the same bump fails an order-2 lattice scan too
    const CmReport rep2 = hcm_check(f, 1.0, 2.0, 6.0, 81, 0.05, 2, 1e-9);
    CHECK_FALSE(rep2.pass);
    CHECK_FALSE(rep2.witnesses.empty());
}

TEST_CASE("identically zero densities pass vacuously") {
    const auto f = [](double) { return 0.0; };
    CHECK(hcm_check(f, 1.0, 2.0, 4.0, 41, 0.05, 4, 1e-9).pass);
    CHECK(hm_check(f, {0.5, 1.0}, 2.0, 4.0, 41, 1e-9).pass);
}

TEST_CASE("lattice and per-stencil evaluation agree") {
    const auto f = [](double x) { return std::exp(-1.2 * x); };
    // grid step equals delta: shared-node path
    const CmReport a = hcm_check(f, 1.0, 2.0, 4.0, 41, 0.05, 3, 1e-9);
    // grid step 0.05 but delta 0.03: independent stencil path
    const CmReport b = hcm_check(f, 1.0, 2.0, 4.0, 41, 0.03, 3, 1e-9);
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(a.delta == 0.05);
    CHECK(b.delta == 0.03);
}

TEST_CASE("scan inputs are validated") {
    const auto f = [](double x) { return std::exp(-x); };
    CHECK_THROWS_AS(hcm_check(f, 0.0, 2.0, 4.0, 41, 0.05, 3, 1e-9), std::domain_error);
    CHECK_THROWS_AS(hcm_check(f, 1.0, 1.5, 4.0, 41, 0.05, 3, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(hcm_check(f, 1.0, 4.0, 2.0, 41, 0.05, 3, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(hcm_check(f, 1.0, 2.0, 4.0, 1, 0.05, 3, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(hcm_check(f, 1.0, 2.0, 4.0, 41, 0.0, 3, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(hcm_check(f, 1.0, 2.0, 4.0, 41, 0.05, 0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(hm_check(f, {1.0, -2.0}, 2.0, 4.0, 41, 1e-9), std::domain_error);
    CHECK_THROWS_AS(hm_check(f, {}, 2.0, 4.0, 41, 1e-9), std::invalid_argument);
}

TEST_CASE("report serializes to the documented JSON shape") {
    const auto f = [](double x) { return std::exp(-x); };
    const CmReport rep = hcm_check(f, 2.0, 2.0, 4.0, 41, 0.05, 3, 1e-9);
    const nlohmann::json j = nlohmann::json::parse(rep.to_json());
    CHECK(j.at("u") == 2.0);
    CHECK(j.at("w_min") == 2.0);
    CHECK(j.at("w_max") == 4.0);
    CHECK(j.at("n_points") == 41);
    CHECK(j.at("delta") == 0.05);
    CHECK(j.at("max_order") == 3);
    CHECK(j.at("epsilon") == 1e-9);
    CHECK(j.at("pass") == true);
    CHECK(j.at("witnesses").is_array());
    CHECK(j.at("witnesses").empty());

    const auto bad = [](double x) {
        return std::exp(-x) * (1.0 + 0.5 * std::exp(-40.0 * (x - 3.0) * (x - 3.0)));
    };
    const nlohmann::json jb =
        nlohmann::json::parse(hm_check(bad, {1.0}, 2.0, 6.0, 161, 1e-9).to_json());
    CHECK(jb.at("pass") == false);
    REQUIRE_FALSE(jb.at("witnesses").empty());
    const auto& w0 = jb.at("witnesses")[0];
    CHECK(w0.contains("k"));
    CHECK(w0.contains("w"));
    CHECK(w0.contains("value"));
}
