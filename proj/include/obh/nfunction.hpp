#pragma once
// Young-function families and their calculus: values, densities, growth
// exponents, complementary function, growth-rate comparisons.
#include <string>
#include <utility>
#include <vector>

namespace obh {

enum class Family { Power, PiecewisePower, PowerLog };

// G(t) = integral_0^t g(s) ds with g odd, increasing, g(0)=0.
// Power(p):          G = |t|^p / p
// PiecewisePower:    g = p t^{p-1} below the knot t=1, p t^{q-1} above;
//                    G = t^p below, 1 + (p/q)(t^q - 1) above
// PowerLog:          g = log(1+|t|), G = (1+|t|) log(1+|t|) - |t|
struct NFunction {
    Family family = Family::Power;
    double p = 2.0;
    double q = 3.0; // PiecewisePower only

    static NFunction power(double p);
    static NFunction piecewise_power(double p, double q);
    static NFunction power_log();

    double G(double t) const;
    double g(double t) const;  // odd density
    double ga(double a) const; // density on magnitudes, a >= 0
    double gp(double a) const; // d/da of ga, right value at kinks

    // analytic (lower, upper) growth exponents of t g(t)/G(t)
    std::pair<double, double> exponent_range() const;
    bool singular_density() const;        // g(a)/a unbounded as a -> 0+
    bool satisfies_growth_bounds() const; // lower growth exponent > 1
    std::string name() const;
};

struct ExponentPair {
    double p_minus = 0.0;
    double p_plus = 0.0;
    bool exact = false;       // closed form vs sampled
    bool g1_violated = false; // lower exponent degenerates to 1
};

// Growth exponents of t g(t)/G(t): closed form where available, otherwise
// sampled on a log grid over [1e-8, 1e8] with golden-section refinement.
ExponentPair delta2_exponents(const NFunction& nf);

// Complementary function G~(s) = sup_t (st - G(t)), via the density inverse.
// Throws "conjugate bracket not found" when g never reaches s.
double complementary(const NFunction& nf, double s);

// Inverse of G on [0, inf).
double inverse_G(const NFunction& nf, double s);

// Checks p_minus - 1 <= t g'(t)/g(t) <= p_plus - 1 on the grid
// (1e-6 relative tolerance; pass p_plus = +inf for a one-sided check).
bool check_condition_L(const NFunction& nf, double p_minus, double p_plus,
                       const std::vector<double>& t_grid);

// True when A(c t)/B(t) is decreasing and tends to zero along t -> inf,
// for every scaling c in c_list.
bool essentially_slower(const NFunction& A, const NFunction& B,
                        const std::vector<double>& c_list = {0.5, 1.0, 2.0, 10.0});

// Inverse of the order-`order` Sobolev conjugate in dimension n:
// (G_1*)^{-1}(t) = integral_0^t G^{-1}(s) s^{-1-1/n} ds, iterated for order 2.
// Throws "subcritical condition fails" when the integral diverges at zero.
double sobolev_conjugate_inverse(const NFunction& nf, int n, double t, int order = 1);

} // namespace obh
