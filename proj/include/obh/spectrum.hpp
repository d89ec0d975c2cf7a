#pragma once
// Two-family spectrum analysis: growth-regime classification, embedding
// constant estimation, lambda thresholds, critical-point location, and the
// spectrum scan over lambda.
#include "obh/eigensolver.hpp"
#include "obh/grid.hpp"
#include "obh/nfunction.hpp"
#include <optional>
#include <vector>

namespace obh {

enum class Regime { NearZero, WholeLineCoercive, NearInfinity, WholeLineSuperlinear, Unclassified };
enum class CriticalMethod { GlobalDescent, BallLocalMin };

const char* regime_name(Regime r);
const char* method_name(CriticalMethod m);

struct RegimeReport {
    ExponentPair expG, expB;
    Regime regime = Regime::Unclassified;
    double embedding_C = 0.0;
    double rho = 0.0;                // default ball radius min(0.5/C, 0.5)
    double lambda_star = 0.0;        // near-zero threshold at the default rho (0 if n/a)
    double lambda_star_star = 0.0;   // inf of the comparison profile when it is 1/C (0 if n/a)
    bool subcritical = false;
    bool density_lower_ok_B = false; // one-sided near-zero density check for B
    bool density_lower_ok_G = false; // same check for G (informational)
};

Regime classify_regime(const ExponentPair& expG, const ExponentPair& expB);

// sup of ||u||_B / ||u||_{2,G} over smooth candidates, `samples` seeded
// gaussians (doubling samples extends the same stream, so the value never
// decreases), and an inverse-power refinement sequence.
double estimate_embedding_constant(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                   int samples, const SolverConfig& cfg);

RegimeReport build_regime_report(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                 int samples, const SolverConfig& cfg);

// rho^{pG_plus - pB_minus} / (2C); near-zero regime only, requires C rho < 1
double lambda_star(const RegimeReport& rep, double rho);

// comparison profile F(t) = (1/C) t^{pG_minus - pB_plus} below t=1,
// (1/C) t^{pG_plus - pB_minus} above
double threshold_F(const RegimeReport& rep, double t);

struct CriticalPointResult {
    double lambda = 0.0;
    bool found = false;
    std::optional<GridFunction> u;
    double phi_value = 0.0;
    double residual = 0.0;
    CriticalMethod method = CriticalMethod::GlobalDescent;
};

// Locates a nontrivial critical point of Phi_lambda using the method the
// regime prescribes; found requires residual < grad_tol and a norm above the
// nontriviality floor (10 * grad_tol).
CriticalPointResult find_critical_point(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                        double lambda, const RegimeReport& rep,
                                        const SolverConfig& cfg);

std::vector<CriticalPointResult> scan_spectrum(const NFunction& nfG, const NFunction& nfB,
                                               const Grid& g, const std::vector<double>& lambdas,
                                               const RegimeReport& rep, const SolverConfig& cfg);

// Produces u whose critical multiplier sits below C_target by halving lambda
// until a critical point appears; throws "witness not found at this
// resolution" when lambda would drop below 1e-10.
GridFunction anti_sobolev_witness(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                  double C_target, const SolverConfig& cfg);

} // namespace obh
