#include "stablehcm/quadrature.hpp"

#include <cmath>
#include <limits>

namespace stablehcm {

namespace {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1] (QUADPACK values).
constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
};
constexpr double wgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
};
constexpr double wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = wg[3] * fc;
    double res_k = wgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        res_k += wgk[j] * fsum;
        if (j % 2 == 1) res_g += wg[j / 2] * fsum;
    }
    res_g *= h;
    res_k *= h;
    const double diff = std::fabs(res_k - res_g);
    // QUADPACK-style sharpened estimate
    double err = diff;
    if (diff > 0.0) err = std::pow(200.0 * diff, 1.5);
    if (err > diff) err = diff;
    return {res_k, err};
}

struct Segment {
    double a, b, value, error;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abstol, double reltol) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        return -integrate(f, b, a, abstol, reltol);
    }

    std::vector<Segment> segs;
    auto push = [&](double lo, double hi) {
        PanelResult r = gk15(f, lo, hi);
        segs.push_back({lo, hi, r.kronrod, r.error});
    };
    push(a, b);

    const int max_segments = 4000;
    for (;;) {
        double total = 0.0, toterr = 0.0;
        int worst = -1;
        double worst_err = 0.0;
        for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
            total += segs[i].value;
            toterr += segs[i].error;
            if (segs[i].error > worst_err) {
                worst_err = segs[i].error;
                worst = i;
            }
        }
        const double tol = abstol + reltol * std::fabs(total);
        if (toterr <= tol) return total;
        if (static_cast<int>(segs.size()) >= max_segments || worst < 0) {
            throw QuadratureError("integrate: tolerance not reached, achieved error estimate " +
                                      std::to_string(toterr),
                                  toterr);
        }
        Segment s = segs[worst];
        segs.erase(segs.begin() + worst);
        const double mid = 0.5 * (s.a + s.b);
        push(s.a, mid);
        push(mid, s.b);
    }
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abstol, double reltol, double first_width) {
    double total = 0.0;
    double lo = a;
    double width = first_width;
    int quiet = 0;
    for (int seg = 0; seg < 200; ++seg) {
        const double hi = lo + width;
        const double part = integrate(f, lo, hi, abstol * 0.1, reltol * 0.1);
        total += part;
        const double tol = abstol + reltol * std::fabs(total);
        if (std::fabs(part) < tol) {
            if (++quiet >= 2) return total;
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    throw QuadratureError("integrate_to_inf: tail did not settle", std::fabs(total));
}

TanhSinh::TanhSinh(int levels) {
    const long double step = std::ldexp(1.0L, -levels);
    constexpr long double pi_half = 1.570796326794896619231321691639751442099L;
    // j = 0 node
    nodes_.push_back({1.0L, 1.0L, step * pi_half});
    for (int j = 1;; ++j) {
        const long double t = step * j;
        const long double s = pi_half * std::sinh(t);
        const long double ch = std::cosh(s);
        const long double w = pi_half * std::cosh(t) / (ch * ch);
        if (w < 1e-24L) break;
        const long double em = std::exp(-s);
        const long double ep = std::exp(s);
        // 1 -+ tanh(s) without cancellation
        const long double omt = 2.0L * em / (ep + em);
        const long double opt = 2.0L * ep / (ep + em);
        nodes_.push_back({omt, opt, step * w});   // node at +tanh(s)
        nodes_.push_back({opt, omt, step * w});   // node at -tanh(s)
        if (j > 40000) break;
    }
}

long double TanhSinh::integrate(const std::function<long double(long double)>& f,
                                long double a, long double b) const {
    const long double half = 0.5L * (b - a);
    long double sum = 0.0L;
    for (const Node& n : nodes_) {
        // form the abscissa from the nearer endpoint to keep resolution there
        const long double x = (n.one_plus_t <= 1.0L) ? a + half * n.one_plus_t
                                                     : b - half * n.one_minus_t;
        if (x <= a || x >= b) continue;
        sum += n.weight * f(x);
    }
    return sum * half;
}

}  // namespace stablehcm
