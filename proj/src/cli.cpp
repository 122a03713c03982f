#include "stablehcm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stablehcm/factorization.hpp"
#include "stablehcm/hcm.hpp"
#include "stablehcm/products.hpp"
#include "stablehcm/quadrature.hpp"
#include "stablehcm/specfun.hpp"
#include "stablehcm/stable.hpp"

namespace stablehcm {
namespace cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// --expect fail swaps the meaning of exit codes 0 and 1
int verdict(bool pass, const std::string& expect) {
    const bool want_pass = (expect != "fail");
    return pass == want_pass ? 0 : 1;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        os = &file;
    }
};

std::vector<std::pair<double, double>> parse_beta_factors(const std::vector<std::string>& specs) {
    std::vector<std::pair<double, double>> out;
    for (const std::string& s : specs) {
        const auto comma = s.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("--beta expects a,b; got " + s);
        }
        std::size_t apos = 0;
        std::size_t bpos = 0;
        const double a = std::stod(s.substr(0, comma), &apos);
        const double b = std::stod(s.substr(comma + 1), &bpos);
        if (apos != comma || bpos != s.size() - comma - 1) {
            throw std::invalid_argument("--beta expects a,b; got " + s);
        }
        out.emplace_back(a, b);
    }
    return out;
}

FactorizationPlan build_plan(const std::string& name, std::optional<double> alpha,
                             std::optional<double> a, std::optional<double> b, int terms) {
    auto need_alpha = [&]() -> double {
        if (!alpha) throw std::invalid_argument("plan '" + name + "' needs --alpha");
        return *alpha;
    };
    if (name == "inverse-stable" || name == "lemma2") {
        return inverse_stable_plan(StableParams(need_alpha()), terms);
    }
    if (name == "gamma" || name == "lemma3") {
        if (!a || !b) throw std::invalid_argument("plan 'gamma' needs --a and --b");
        return gamma_plan(*a, *b, terms);
    }
    if (name == "theorem-decomposition" || name == "theorem") {
        return decomposition_plan(StableParams(need_alpha()), terms);
    }
    if (name == "power-alpha" || name == "power") {
        return power_plan(StableParams(need_alpha()), terms);
    }
    throw std::invalid_argument(
        "unknown plan '" + name +
        "' (use inverse-stable, gamma, theorem-decomposition or power-alpha)");
}

// closed-form Mellin value the plan approximates, as a log
double log_plan_target(const FactorizationPlan& plan, double s) {
    switch (plan.target) {
        case PlanTarget::inverse_stable:
        case PlanTarget::theorem_decomposition:
            // E[Z^{-s}] = Gamma(1 + s/alpha) / Gamma(1 + s)
            return ln_gamma(1.0 + s / plan.alpha) - ln_gamma(1.0 + s);
        case PlanTarget::gamma:
            return ln_gamma(plan.param_a + s) - ln_gamma(plan.param_a);
        case PlanTarget::power_alpha:
            // E[Z^{-alpha s}] = Gamma(1 + s) / Gamma(1 + alpha s)
            return ln_gamma(1.0 + s) - ln_gamma(1.0 + plan.alpha * s);
    }
    throw std::logic_error("unreachable plan target");
}

// Density under test for hcm-check / hm-check: a positive stable law, a
// power pushforward of one, or a Gamma x Beta product.
DensityFn make_density(std::optional<double> alpha, std::optional<double> power,
                       std::optional<double> gamma_c,
                       const std::vector<std::string>& beta_specs) {
    const bool product = gamma_c.has_value() || !beta_specs.empty();
    if (product) {
        if (alpha || power) {
            throw std::invalid_argument("--gamma-c/--beta cannot be combined with --alpha/--power");
        }
        ProductSpec spec;
        spec.gamma_shape = gamma_c;
        spec.beta_factors = parse_beta_factors(beta_specs);
        spec.validate();
        return [spec](double x) { return product_density_at(spec, x); };
    }
    if (!alpha) throw std::invalid_argument("need --alpha or a --gamma-c/--beta product");
    const StableParams p(*alpha);
    if (power) {
        const double q = *power;
        if (q == 0.0) throw std::invalid_argument("--power must be nonzero");
        // density of Z^q by change of variables
        return [p, q](double y) {
            if (!(y > 0.0)) return 0.0;
            const double z = std::pow(y, 1.0 / q);
            return density(p, z) * std::fabs(1.0 / q) * z / y;
        };
    }
    return [p](double x) { return density(p, x); };
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"numerical checks for stable-law Beta-product factorizations and hyperbolic monotonicity"};
    app.require_subcommand(1);

    // State bound into the subcommand options below.  Defaults live in the
    // initializers; fields whose defaults differ between subcommands are
    // deliberately separate variables.
    struct {
        std::optional<double> alpha, a, b, gamma_c, power;
        std::vector<double> xs, lambdas, ss, us, ns;
        std::string plan, expect = "pass", out, method = "auto";
        int terms = 1000, tail_terms = 0, n_samples = 1000, order = 6;
        int hcm_points = 0, hm_points = 400;
        std::uint64_t seed = 0;
        double s = 1, u = 1, wmin = 2, wmax = 50, delta = 0.05;
        double hcm_eps = 1e-9, hm_eps = 1e-6;
        double laplace_tol = 1e-6, mellin_tol = 5e-3;
        double williams_tol = 1e-9, malmsten_tol = 1e-8;
        bool csv = false, bound = false;
    } o;

    const auto expect_check = CLI::IsMember({"pass", "fail"});

    CLI::App* density_cmd = app.add_subcommand("density", "evaluate the positive stable density");
    density_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)")->required();
    density_cmd->add_option("--x", o.xs, "evaluation points (repeatable)")->required();
    density_cmd->add_option("--method", o.method, "auto|series|integral")
        ->check(CLI::IsMember({"auto", "series", "integral"}));
    density_cmd->add_flag("--csv", o.csv, "emit x,density CSV with header");
    density_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* sample_cmd = app.add_subcommand("sample", "draw from the stable law or a truncated plan");
    sample_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)");
    sample_cmd->add_option("--plan", o.plan, "sample a factorization plan instead of the exact law");
    sample_cmd->add_option("--a", o.a, "Gamma plan shape");
    sample_cmd->add_option("--b", o.b, "Gamma plan Beta increment");
    sample_cmd->add_option("--terms", o.terms, "plan truncation N");
    sample_cmd->add_option("--n", o.n_samples, "number of draws")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", o.seed, "RNG seed")->required();
    sample_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* laplace_cmd = app.add_subcommand("laplace-check", "quadrature of the Laplace transform vs exp(-lambda^alpha)");
    laplace_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)")->required();
    laplace_cmd->add_option("--lambda", o.lambdas, "transform arguments (repeatable)")->required();
    laplace_cmd->add_option("--tol", o.laplace_tol, "absolute tolerance (default 1e-6)");
    laplace_cmd->add_option("--expect", o.expect, "pass|fail")->check(expect_check);
    laplace_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* mellin_cmd = app.add_subcommand("mellin-check", "truncated plan Mellin transform vs closed form");
    mellin_cmd->add_option("--plan", o.plan, "inverse-stable|gamma|theorem-decomposition|power-alpha")->required();
    mellin_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)");
    mellin_cmd->add_option("--a", o.a, "Gamma plan shape");
    mellin_cmd->add_option("--b", o.b, "Gamma plan Beta increment");
    mellin_cmd->add_option("--terms", o.terms, "plan truncation N");
    mellin_cmd->add_option("--s", o.ss, "Mellin arguments (repeatable)");
    mellin_cmd->add_option("--tol", o.mellin_tol, "relative tolerance (default 5e-3)");
    mellin_cmd->add_option("--expect", o.expect, "pass|fail")->check(expect_check);
    mellin_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* hcm_cmd = app.add_subcommand("hcm-check", "finite-difference complete monotonicity scan of f(uv)f(u/v)");
    hcm_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)");
    hcm_cmd->add_option("--power", o.power, "scan the density of Z^q instead of Z");
    hcm_cmd->add_option("--gamma-c", o.gamma_c, "product: Gamma shape");
    std::vector<std::string> beta_specs;
    hcm_cmd->add_option("--beta", beta_specs, "product: Beta factor a,b (repeatable)");
    hcm_cmd->add_option("--u", o.u, "hyperbolic scale parameter (default 1)");
    hcm_cmd->add_option("--wmin", o.wmin, "scan start (>= 2, default 2)");
    hcm_cmd->add_option("--wmax", o.wmax, "scan end (default 50)");
    hcm_cmd->add_option("--delta", o.delta, "difference step (default 0.05)");
    hcm_cmd->add_option("--order", o.order, "highest difference order K (default 6)");
    hcm_cmd->add_option("--epsilon", o.hcm_eps, "relative slack (default 1e-9)");
    hcm_cmd->add_option("--points", o.hcm_points, "grid points (default: lattice at spacing delta)");
    hcm_cmd->add_option("--expect", o.expect, "pass|fail")->check(expect_check);
    hcm_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* hm_cmd = app.add_subcommand("hm-check", "order-1 hyperbolic monotonicity scan over a u-grid");
    hm_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)");
    hm_cmd->add_option("--power", o.power, "scan the density of Z^q instead of Z");
    hm_cmd->add_option("--gamma-c", o.gamma_c, "product: Gamma shape");
    std::vector<std::string> hm_beta_specs;
    hm_cmd->add_option("--beta", hm_beta_specs, "product: Beta factor a,b (repeatable)");
    hm_cmd->add_option("--u", o.us, "u grid (repeatable; default 0.5 1 2)");
    hm_cmd->add_option("--wmin", o.wmin, "scan start (>= 2, default 2)");
    hm_cmd->add_option("--wmax", o.wmax, "scan end (default 50)");
    hm_cmd->add_option("--points", o.hm_points, "grid points (default 400)");
    hm_cmd->add_option("--epsilon", o.hm_eps, "relative slack (default 1e-6)");
    hm_cmd->add_option("--expect", o.expect, "pass|fail")->check(expect_check);
    hm_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* factorize_cmd = app.add_subcommand("factorize", "emit a truncated factorization plan as JSON");
    factorize_cmd->add_option("--plan", o.plan, "inverse-stable|gamma|theorem-decomposition|power-alpha")->required();
    factorize_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)");
    factorize_cmd->add_option("--a", o.a, "Gamma plan shape");
    factorize_cmd->add_option("--b", o.b, "Gamma plan Beta increment");
    factorize_cmd->add_option("--terms", o.terms, "plan truncation N");
    factorize_cmd->add_option("--out", o.out, "write output to file");

    CLI::App* williams_cmd = app.add_subcommand("williams-check", "Williams factorization constant identity");
    williams_cmd->add_option("--n", o.ns, "orders (repeatable; default 2..6)");
    williams_cmd->add_option("--tol", o.williams_tol, "relative tolerance (default 1e-9)");
    williams_cmd->add_option("--expect", o.expect, "pass|fail")->check(expect_check);

    CLI::App* malmsten_cmd = app.add_subcommand("malmsten-check", "integral representation of ln Gamma increments");
    malmsten_cmd->add_option("--a", o.a, "shift parameter")->required();
    malmsten_cmd->add_option("--s", o.s, "increment")->required();
    malmsten_cmd->add_option("--tol", o.malmsten_tol, "absolute tolerance on logs (default 1e-8)");
    malmsten_cmd->add_option("--expect", o.expect, "pass|fail")->check(expect_check);

    CLI::App* tail_cmd = app.add_subcommand("tail-variance", "variance of the dropped log factors past N");
    tail_cmd->add_option("--alpha", o.alpha, "stability index in (0,1)")->required();
    tail_cmd->add_option("--terms", o.tail_terms, "truncation N (default 0)");
    tail_cmd->add_flag("--bound", o.bound, "also print the bounding integral");
    tail_cmd->add_option("--out", o.out, "write output to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        OutputTarget target;
        target.open(o.out);
        std::ostream& os = *target.os;

        if (app.got_subcommand(density_cmd)) {
            const StableParams p(*o.alpha);
            if (o.csv) os << "x,density\n";
            for (double x : o.xs) {
                double v;
                if (o.method == "series") v = density_series(p, x);
                else if (o.method == "integral") v = density_integral(p, x);
                else v = density(p, x);
                if (o.csv) os << fmt(x) << "," << fmt(v) << "\n";
                else os << fmt(v) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(sample_cmd)) {
            std::vector<double> draws;
            if (!o.plan.empty()) {
                const FactorizationPlan plan = build_plan(o.plan, o.alpha, o.a, o.b, o.terms);
                draws = sample_plan(plan, static_cast<std::size_t>(o.n_samples), o.seed);
            } else {
                if (!o.alpha) throw std::invalid_argument("sample needs --alpha or --plan");
                draws = sample_oracle(StableParams(*o.alpha),
                                      static_cast<std::size_t>(o.n_samples), o.seed);
            }
            for (double d : draws) os << fmt(d) << "\n";
            return 0;
        }

        if (app.got_subcommand(laplace_cmd)) {
            const StableParams p(*o.alpha);
            bool pass = true;
            for (double lam : o.lambdas) {
                const auto [quad, exact] = laplace_check(p, lam);
                const double err = std::fabs(quad - exact);
                const bool ok = err < o.laplace_tol;
                pass = pass && ok;
                os << "lambda=" << fmt(lam) << " quadrature=" << fmt(quad)
                   << " exact=" << fmt(exact) << " abs_error=" << fmt(err)
                   << (ok ? " PASS" : " FAIL") << "\n";
            }
            return verdict(pass, o.expect);
        }

        if (app.got_subcommand(mellin_cmd)) {
            const FactorizationPlan plan = build_plan(o.plan, o.alpha, o.a, o.b, o.terms);
            if (o.ss.empty()) o.ss.push_back(1.0);
            bool pass = true;
            for (double s : o.ss) {
                const double log_plan = log_plan_mellin(plan, s);
                const double log_target = log_plan_target(plan, s);
                const double rel = std::fabs(std::expm1(log_plan - log_target));
                const bool ok = rel < o.mellin_tol;
                pass = pass && ok;
                os << "s=" << fmt(s) << " plan=" << fmt(std::exp(log_plan))
                   << " target=" << fmt(std::exp(log_target))
                   << " rel_error=" << fmt(rel) << (ok ? " PASS" : " FAIL") << "\n";
            }
            return verdict(pass, o.expect);
        }

        if (app.got_subcommand(hcm_cmd)) {
            const DensityFn f = make_density(o.alpha, o.power, o.gamma_c, beta_specs);
            int n_points = o.hcm_points;
            if (n_points <= 0) {
                n_points = static_cast<int>(std::llround((o.wmax - o.wmin) / o.delta)) + 1;
                if (n_points < 2) n_points = 2;
            }
            const CmReport rep =
                hcm_check(f, o.u, o.wmin, o.wmax, n_points, o.delta, o.order, o.hcm_eps);
            os << rep.to_json() << "\n";
            return verdict(rep.pass, o.expect);
        }

        if (app.got_subcommand(hm_cmd)) {
            const DensityFn f = make_density(o.alpha, o.power, o.gamma_c, hm_beta_specs);
            if (o.us.empty()) o.us = {0.5, 1.0, 2.0};
            const CmReport rep = hm_check(f, o.us, o.wmin, o.wmax, o.hm_points, o.hm_eps);
            os << rep.to_json() << "\n";
            return verdict(rep.pass, o.expect);
        }

        if (app.got_subcommand(factorize_cmd)) {
            const FactorizationPlan plan = build_plan(o.plan, o.alpha, o.a, o.b, o.terms);
            os << plan.to_json() << "\n";
            if (plan.target == PlanTarget::inverse_stable) {
                std::cerr << "tail_variance="
                          << fmt(truncation_tail_variance(StableParams(plan.alpha),
                                                          plan.truncation_N))
                          << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(williams_cmd)) {
            if (o.ns.empty()) o.ns = {2, 3, 4, 5, 6};
            bool pass = true;
            for (double nd : o.ns) {
                const int n = static_cast<int>(nd);
                const auto [lhs, rhs] = williams_constant_check(n);
                const double rel = std::fabs(lhs - rhs) / rhs;
                const bool ok = rel < o.williams_tol;
                pass = pass && ok;
                std::cout << "n=" << n << " product_form=" << fmt(lhs)
                          << " n_pow_n=" << fmt(rhs) << " rel_error=" << fmt(rel)
                          << (ok ? " PASS" : " FAIL") << "\n";
            }
            return verdict(pass, o.expect);
        }

        if (app.got_subcommand(malmsten_cmd)) {
            const auto [integral_form, gamma_form] = malmsten_check(*o.a, o.s);
            const double err = std::fabs(integral_form - gamma_form);
            const bool ok = err < o.malmsten_tol;
            std::cout << "a=" << fmt(*o.a) << " s=" << fmt(o.s)
                      << " integral=" << fmt(integral_form)
                      << " ln_gamma_diff=" << fmt(gamma_form)
                      << " abs_error=" << fmt(err) << (ok ? " PASS" : " FAIL") << "\n";
            return verdict(ok, o.expect);
        }

        if (app.got_subcommand(tail_cmd)) {
            const StableParams p(*o.alpha);
            os << "tail_variance=" << fmt(truncation_tail_variance(p, o.tail_terms)) << "\n";
            if (o.bound) {
                os << "bounding_integral=" << fmt(tail_variance_bounding_integral(p.alpha))
                   << "\n";
            }
            return 0;
        }

        throw std::logic_error("no subcommand dispatched");
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("stablehcm");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace cli
}  // namespace stablehcm
