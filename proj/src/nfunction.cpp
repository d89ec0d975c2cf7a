#include "obh/nfunction.hpp"
#include <cmath>
#include <limits>
#include <stdexcept>

namespace obh {

NFunction NFunction::power(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("power exponent must exceed 1");
    NFunction f;
    f.family = Family::Power;
    f.p = p;
    return f;
}

NFunction NFunction::piecewise_power(double p, double q) {
    if (!(p > 1.0) || !(q > 1.0))
        throw std::invalid_argument("piecewise exponents must exceed 1");
    NFunction f;
    f.family = Family::PiecewisePower;
    f.p = p;
    f.q = q;
    return f;
}

NFunction NFunction::power_log() {
    NFunction f;
    f.family = Family::PowerLog;
    return f;
}

double NFunction::G(double t) const {
    double a = std::fabs(t);
    switch (family) {
    case Family::Power:
        return std::pow(a, p) / p;
    case Family::PiecewisePower:
        return a <= 1.0 ? std::pow(a, p) : 1.0 + (p / q) * (std::pow(a, q) - 1.0);
    case Family::PowerLog:
        return (1.0 + a) * std::log1p(a) - a;
    }
    return 0.0;
}

double NFunction::ga(double a) const {
    switch (family) {
    case Family::Power:
        return std::pow(a, p - 1.0);
    case Family::PiecewisePower:
        return a <= 1.0 ? p * std::pow(a, p - 1.0) : p * std::pow(a, q - 1.0);
    case Family::PowerLog:
        return std::log1p(a);
    }
    return 0.0;
}

double NFunction::g(double t) const {
    double v = ga(std::fabs(t));
    return t < 0.0 ? -v : v;
}

double NFunction::gp(double a) const {
    switch (family) {
    case Family::Power:
        return (p - 1.0) * std::pow(a, p - 2.0);
    case Family::PiecewisePower:
        return a < 1.0 ? p * (p - 1.0) * std::pow(a, p - 2.0)
                       : p * (q - 1.0) * std::pow(a, q - 2.0);
    case Family::PowerLog:
        return 1.0 / (1.0 + a);
    }
    return 0.0;
}

std::pair<double, double> NFunction::exponent_range() const {
    switch (family) {
    case Family::Power:
        return {p, p};
    case Family::PiecewisePower:
        return {std::min(p, q), std::max(p, q)};
    case Family::PowerLog:
        return {1.0, 2.0};
    }
    return {0.0, 0.0};
}

bool NFunction::singular_density() const {
    // density exponent near zero below 1 <=> g(a)/a blows up at 0
    switch (family) {
    case Family::Power:
        return p < 2.0;
    case Family::PiecewisePower:
        return p < 2.0; // near-zero branch has exponent p-1
    case Family::PowerLog:
        return false; // log(1+a)/a -> 1
    }
    return false;
}

bool NFunction::satisfies_growth_bounds() const {
    return family != Family::PowerLog;
}

std::string NFunction::name() const {
    char buf[96];
    switch (family) {
    case Family::Power:
        std::snprintf(buf, sizeof buf, "power(%g)", p);
        return buf;
    case Family::PiecewisePower:
        std::snprintf(buf, sizeof buf, "piecewise_power(%g,%g)", p, q);
        return buf;
    case Family::PowerLog:
        return "power_log";
    }
    return "?";
}

namespace {

double growth_ratio(const NFunction& nf, double t) {
    return t * nf.ga(t) / nf.G(t);
}

// golden-section extremum refinement of growth_ratio on [a, b]
double golden_extremum(const NFunction& nf, double a, double b, bool want_max) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = growth_ratio(nf, x1), f2 = growth_ratio(nf, x2);
    for (int it = 0; it < 120 && (b - a) > 1e-14 * std::max(1.0, std::fabs(a)); ++it) {
        bool move_left = want_max ? (f1 > f2) : (f1 < f2);
        if (move_left) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = growth_ratio(nf, x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = growth_ratio(nf, x2);
        }
    }
    double fm = growth_ratio(nf, 0.5 * (a + b));
    return want_max ? std::max(fm, std::max(f1, f2)) : std::min(fm, std::min(f1, f2));
}

} // namespace

ExponentPair delta2_exponents(const NFunction& nf) {
    ExponentPair out;
    if (nf.family == Family::Power) {
        out.p_minus = nf.p;
        out.p_plus = nf.p;
        out.exact = true;
        return out;
    }
    const int N = 1000;
    const double lo = 1e-8, hi = 1e8;
    double best_min = std::numeric_limits<double>::infinity(), best_max = 0.0;
    int imin = 0, imax = 0;
    std::vector<double> ts(N);
    for (int i = 0; i < N; ++i) {
        ts[i] = lo * std::pow(hi / lo, double(i) / (N - 1));
        double r = growth_ratio(nf, ts[i]);
        if (r < best_min) { best_min = r; imin = i; }
        if (r > best_max) { best_max = r; imax = i; }
    }
    auto refine = [&](int i, bool want_max) {
        double a = ts[std::max(0, i - 1)], b = ts[std::min(N - 1, i + 1)];
        return golden_extremum(nf, a, b, want_max);
    };
    out.p_minus = std::min(best_min, refine(imin, false));
    out.p_plus = std::max(best_max, refine(imax, true));
    out.exact = false;
    if (nf.family == Family::PowerLog) {
        // the ratio tends to 1 from above at infinity; the infimum is not attained
        out.p_minus = 1.0;
        out.g1_violated = true;
    }
    return out;
}

namespace {

// solve increasing fn(w) = target by bracket doubling + bisection
template <class F>
double solve_increasing(F&& fn, double target, const char* overflow_msg) {
    if (target <= 0.0) return 0.0;
    double hi = 1.0;
    while (fn(hi) < target) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error(overflow_msg);
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (fn(mid) < target) lo = mid; else hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double complementary(const NFunction& nf, double s) {
    double a = std::fabs(s);
    if (a == 0.0) return 0.0;
    if (nf.family == Family::Power) {
        double pc = nf.p / (nf.p - 1.0);
        return std::pow(a, pc) / pc;
    }
    double w = solve_increasing([&](double t) { return nf.ga(t); }, a,
                                "conjugate bracket not found");
    return a * w - nf.G(w);
}

double inverse_G(const NFunction& nf, double s) {
    if (s < 0.0) throw std::invalid_argument("inverse_G needs s >= 0");
    return solve_increasing([&](double t) { return nf.G(t); }, s,
                            "conjugate bracket not found");
}

bool check_condition_L(const NFunction& nf, double p_minus, double p_plus,
                       const std::vector<double>& t_grid) {
    double lo = p_minus - 1.0;
    double hi = p_plus - 1.0;
    for (double t : t_grid) {
        if (!(t > 0.0)) continue;
        double ratio = t * nf.gp(t) / nf.ga(t);
        if (ratio < lo - 1e-6 * std::max(1.0, std::fabs(lo))) return false;
        if (std::isfinite(hi) && ratio > hi + 1e-6 * std::max(1.0, std::fabs(hi))) return false;
    }
    return true;
}

bool essentially_slower(const NFunction& A, const NFunction& B,
                        const std::vector<double>& c_list) {
    const int N = 64;
    const double t0 = 1.0, t1 = 1e8;
    for (double c : c_list) {
        double prev = std::numeric_limits<double>::infinity();
        double first = 0.0, last = 0.0;
        for (int i = 0; i < N; ++i) {
            double t = t0 * std::pow(t1 / t0, double(i) / (N - 1));
            double r = A.G(c * t) / B.G(t);
            if (i == 0) first = r;
            if (i == N - 1) last = r;
            if (r > prev * (1.0 + 1e-9)) return false;
            prev = r;
        }
        if (!(last <= 1e-6 * std::max(1.0, first))) return false;
    }
    return true;
}

} // namespace obh
