#pragma once
// Constrained minimization of the fourth-order energy on a modular sphere,
// plus the Rayleigh-type quotient infimum estimate and per-run lower bounds.
#include "obh/grid.hpp"
#include "obh/nfunction.hpp"
#include <cstdint>
#include <optional>

namespace obh {

struct SolverConfig {
    int max_iters = 500;
    double grad_tol = 1e-8;
    double step0 = 1.0;
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    double sphere_tol = 1e-12;
    std::uint64_t seed = 1;
    double eps_reg = -1.0; // auto: 1e-8 h for singular densities, else 0
    int multistart = 4;

    bool operator==(const SolverConfig&) const = default;
};

struct SolveTrace {
    double max_sphere_violation = 0.0; // max |modular(u^k) - r| over accepted iterates
    double max_energy_uphill = 0.0;    // max (E_{k+1}-E_k)/max(1,|E_k|)
};

struct EigenResult {
    GridFunction u_r;
    double c_r = 0.0;      // energy level at the solution
    double lambda_r = 0.0; // multiplier from the quotient identity
    double residual = 0.0;
    double r = 0.0;
    int iterations = 0;
    bool converged = false;
    double eps_used = 0.0;
    SolveTrace trace;
};

// Radial projection onto {modular_A(u) = r}; throws
// "cannot project zero onto modular sphere" for the zero function.
GridFunction project_to_sphere(const NFunction& nfA, const GridFunction& u, double r);

// min energy_G subject to modular_G(u) = r (multi-start; deterministic in seed)
EigenResult solve_constrained(const NFunction& nfG, const Grid& g, double r, const SolverConfig& cfg);

// same with a separate constraint family A
EigenResult solve_constrained_pair(const NFunction& nfG, const NFunction& nfA, const Grid& g,
                                   double r, const SolverConfig& cfg);

// single descent from a given start (warm starts for parameter sweeps)
EigenResult solve_constrained_from(const NFunction& nfG, const NFunction& nfA, const Grid& g,
                                   double r, const SolverConfig& cfg, const GridFunction& u0);

// estimate of inf over nonzero u of the quotient
//   sum w g(|Du|)|Du| / sum w g(|u|)|u|
// (multi-scale multi-start descent; the quotient is scale-dependent for
// non-homogeneous families, so scale is part of the search space)
double rayleigh_lambda0(const NFunction& nfG, const Grid& g, const SolverConfig& cfg);

struct BoundsReport {
    double lambda_r = 0.0;
    double exponent_bound = 0.0;   // p_minus c_r / (r p_plus)
    double lambda0_estimate = 0.0; // quotient infimum estimate
    bool ok_exponent = false;
    bool ok_lambda0 = false;
};
// Verifies lambda_r against both lower bounds (1e-6 relative slack).
BoundsReport check_lower_bounds(const EigenResult& res, const NFunction& nfG, const SolverConfig& cfg);

} // namespace obh
