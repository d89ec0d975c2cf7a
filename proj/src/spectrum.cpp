#include "obh/spectrum.hpp"
#include "obh/biharmonic.hpp"
#include "obh/kernels.hpp"
#include "obh/laplacian.hpp"
#include "obh/orlicz.hpp"
#include "obh/parallel.hpp"
#include "obh/rng.hpp"
#include "variable_metric.hpp"
#include <cmath>
#include <limits>
#include <stdexcept>

namespace obh {

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::NearZero: return "NearZero";
    case Regime::WholeLineCoercive: return "WholeLineCoercive";
    case Regime::NearInfinity: return "NearInfinity";
    case Regime::WholeLineSuperlinear: return "WholeLineSuperlinear";
    case Regime::Unclassified: return "Unclassified";
    }
    return "?";
}

const char* method_name(CriticalMethod m) {
    return m == CriticalMethod::GlobalDescent ? "GlobalDescent" : "BallLocalMin";
}

Regime classify_regime(const ExponentPair& expG, const ExponentPair& expB) {
    if (expG.g1_violated || expB.g1_violated) throw std::runtime_error("(G1) violated");
    if (!(expG.p_minus > 1.0) || !(expB.p_minus > 1.0))
        throw std::invalid_argument("growth exponents must exceed 1");
    if (expB.p_plus < expG.p_minus) return Regime::WholeLineCoercive;
    if (expG.p_plus < expB.p_minus) return Regime::WholeLineSuperlinear;
    if (expB.p_minus < expG.p_minus && expG.p_minus < expB.p_plus) return Regime::NearZero;
    if (expG.p_minus < expB.p_minus && expB.p_minus < expG.p_plus) return Regime::NearInfinity;
    return Regime::Unclassified;
}

namespace {

using detail::Metric;
using detail::weighted_rms_image;

GridFunction bump_profile(const Grid& g) {
    GridFunction u(g);
    const double h = g.h();
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            double x = (i + 1) * h;
            u.v[i] = x * x * (1 - x) * (1 - x);
        }
    } else {
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = (i + 1) * h, y = (j + 1) * h;
                u.v[std::size_t(j) * g.n + i] =
                    x * x * (1 - x) * (1 - x) * y * y * (1 - y) * (1 - y);
            }
    }
    return u;
}

GridFunction sine_profile(const Grid& g, int k) {
    GridFunction u(g);
    const double h = g.h();
    const double pi = 3.14159265358979323846;
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) u.v[i] = std::sin(k * pi * (i + 1) * h);
    } else {
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                u.v[std::size_t(j) * g.n + i] =
                    std::sin(k * pi * (i + 1) * h) * std::sin(k * pi * (j + 1) * h);
    }
    return u;
}

GridFunction gaussian_profile(const Grid& g, std::uint64_t seed) {
    GaussianStream gs(seed);
    GridFunction u(g);
    for (auto& x : u.v) x = gs.next();
    return u;
}

struct PhiDescent {
    GridFunction u;
    double phi = 0.0;
    double residual = 1.0;
    int iterations = 0;
    bool converged = false;
};

// Descent on Phi_lambda; ball_rho > 0 retracts every trial radially onto the
// ||.||_{2,G} <= rho ball (local-minimizer search), ball_rho == 0 is free descent.
PhiDescent descend_phi(const NFunction& nfG, const NFunction& nfB, GridFunction u, double lam,
                       double eps, double ball_rho, const SolverConfig& cfg, Metric& metric) {
    const Grid& g = u.grid;
    const std::size_t N = g.num_nodes();
    double P = phi_value(nfG, nfB, u, lam);
    double sigma = 3e-2 * weighted_rms_image(g, lap_image(u)) + 1e-300;
    double res = 1.0;
    PhiDescent out;
    int it = 0;
    auto clipped = [&](const GridFunction& base, const std::vector<double>& d, double t) {
        GridFunction ut = base;
        kern::axpy(t, d.data(), ut.data(), N);
        if (ball_rho > 0.0) {
            double nn = norm_2G(nfG, ut);
            if (nn > ball_rho) kern::scal(ball_rho / nn, ut.data(), N);
        }
        return ut;
    };
    for (; it < cfg.max_iters; ++it) {
        res = phi_residual(nfG, nfB, u, lam, eps);
        if (res < cfg.grad_tol) {
            out.converged = true;
            break;
        }
        std::vector<double> grad = phi_gradient(nfG, nfB, u, lam, eps);
        LapImage img = lap_image(u);
        double rms = weighted_rms_image(g, img);
        bool newton = res < 1e-4;
        if (newton) sigma = std::max(eps, 1e-10 * rms);
        if (!metric.factor(nfG, img, sigma)) {
            sigma = std::max(sigma * 10.0, 1e-4 * rms);
            continue;
        }
        Eigen::VectorXd dv = metric.solve(grad);
        std::vector<double> d(N);
        for (std::size_t i = 0; i < N; ++i) d[i] = -dv[int(i)];
        double gd = kern::dot(grad.data(), d.data(), N);
        if (gd >= 0.0) {
            for (std::size_t i = 0; i < N; ++i) d[i] = -grad[i];
            gd = kern::dot(grad.data(), d.data(), N);
        }
        bool moved = false;
        if (newton) {
            double t = cfg.step0;
            for (int k = 0; k < 30; ++k) {
                GridFunction ut = clipped(u, d, t);
                if (phi_residual(nfG, nfB, ut, lam, eps) <= res * (1.0 - 1e-3 * t)) {
                    u = std::move(ut);
                    P = phi_value(nfG, nfB, u, lam);
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
        }
        if (!moved) {
            double t = cfg.step0;
            GridFunction ut;
            double Pt = 0.0;
            for (;;) {
                ut = clipped(u, d, t);
                Pt = phi_value(nfG, nfB, ut, lam);
                if (Pt <= P + cfg.armijo_c * t * gd + 8e-16 * std::fabs(P) || t < 1e-18) break;
                t *= cfg.backtrack;
            }
            u = std::move(ut);
            P = Pt;
            double rms2 = weighted_rms_image(g, lap_image(u));
            if (t >= 0.25)
                sigma = std::max(eps, std::min(0.5 * sigma, 3e-2 * rms2));
            else if (t < 1e-8)
                sigma = std::min(4.0 * sigma, 3e-2 * rms2);
        }
    }
    out.u = std::move(u);
    out.phi = P;
    out.residual = res;
    out.iterations = it;
    return out;
}

CriticalPointResult pack_result(const NFunction& nfG, double lam, GridFunction u, double phi,
                                double res, CriticalMethod m, const SolverConfig& cfg) {
    CriticalPointResult out;
    out.lambda = lam;
    out.method = m;
    out.phi_value = phi;
    out.residual = res;
    double nn = norm_2G(nfG, u);
    out.found = res < cfg.grad_tol && nn > 10.0 * cfg.grad_tol;
    out.u = std::move(u);
    return out;
}

CriticalPointResult critical_by_descent(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                        double lam, double ball_rho, const SolverConfig& cfg) {
    const std::size_t N = g.num_nodes();
    const double eps = cfg.eps_reg >= 0.0 ? cfg.eps_reg : default_eps_reg(nfG, g);
    GridFunction bmp = bump_profile(g);
    std::vector<GridFunction> starts;
    if (ball_rho <= 0.0) {
        // free descent: pick the bump amplitude with the most negative Phi
        double bestP = std::numeric_limits<double>::infinity();
        double bestt = 1.0;
        for (int k = -10; k <= 25; ++k) {
            double t = std::ldexp(1.0, k);
            GridFunction ut = bmp;
            kern::scal(t, ut.data(), N);
            double P = phi_value(nfG, nfB, ut, lam);
            if (P < bestP) {
                bestP = P;
                bestt = t;
            }
        }
        GridFunction u0 = bmp;
        kern::scal(bestt, u0.data(), N);
        double scale_norm = wnorm2(g, u0.v);
        starts.push_back(std::move(u0));
        for (int s = 0; s < cfg.multistart; ++s) {
            GridFunction w = gaussian_profile(g, cfg.seed + 100 + std::uint64_t(s));
            kern::scal(scale_norm / wnorm2(g, w.v), w.data(), N);
            starts.push_back(std::move(w));
        }
    } else {
        // ball search: smallest dyadic bump amplitude that already has Phi < 0
        double tneg = std::ldexp(1.0, -10);
        for (int k = 1; k <= 20; ++k) {
            double t = std::ldexp(1.0, -k);
            GridFunction ut = bmp;
            kern::scal(t, ut.data(), N);
            if (phi_value(nfG, nfB, ut, lam) < 0.0) {
                tneg = t;
                break;
            }
        }
        GridFunction u0 = bmp;
        kern::scal(tneg, u0.data(), N);
        starts.push_back(std::move(u0));
        for (int s = 0; s < cfg.multistart; ++s) {
            GridFunction w = gaussian_profile(g, cfg.seed + 100 + std::uint64_t(s));
            kern::scal(1e-3, w.data(), N);
            starts.push_back(std::move(w));
        }
    }
    std::vector<PhiDescent> runs(starts.size());
    parallel_for(starts.size(), [&](std::size_t si) {
        Metric metric;
        metric.setup(g);
        runs[si] = descend_phi(nfG, nfB, starts[si], lam, eps, ball_rho, cfg, metric);
    });
    auto qualifies = [&](const PhiDescent& r) {
        return r.residual < cfg.grad_tol && norm_2G(nfG, r.u) > 10.0 * cfg.grad_tol;
    };
    int best = 0;
    for (int i = 1; i < int(runs.size()); ++i) {
        bool qa = qualifies(runs[i]), qb = qualifies(runs[best]);
        if (qa != qb) {
            if (qa) best = i;
        } else if (runs[i].phi < runs[best].phi) {
            best = i;
        }
    }
    CriticalMethod m = ball_rho > 0.0 ? CriticalMethod::BallLocalMin : CriticalMethod::GlobalDescent;
    return pack_result(nfG, lam, std::move(runs[best].u), runs[best].phi, runs[best].residual, m,
                       cfg);
}

// Superlinear / near-infinity regimes: the constrained multiplier lambda_hat(r)
// along the B-sphere curve is matched to the target lambda.
CriticalPointResult critical_by_sphere(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                       double lam, const SolverConfig& cfg) {
    const double eps = cfg.eps_reg >= 0.0 ? cfg.eps_reg : default_eps_reg(nfG, g);
    if (nfG.family == Family::Power && nfB.family == Family::Power) {
        // homogeneous pair: rescale one solve, alpha = (lambda_hat/lambda)^(1/(pB-pG))
        EigenResult base = solve_constrained_pair(nfG, nfB, g, 1.0, cfg);
        double alpha = std::pow(base.lambda_r / lam, 1.0 / (nfB.p - nfG.p));
        GridFunction u = base.u_r;
        kern::scal(alpha, u.data(), u.size());
        double res = weak_residual(nfG, nfB, u, lam, eps);
        double phi = phi_value(nfG, nfB, u, lam);
        return pack_result(nfG, lam, std::move(u), phi, res, CriticalMethod::BallLocalMin, cfg);
    }
    SolverConfig scfg = cfg;
    scfg.multistart = 1;
    GridFunction u_prev = gaussian_profile(g, cfg.seed);
    std::vector<double> rs, lh;
    for (int k = -8; k <= 16; ++k) {
        double r = std::pow(4.0, double(k));
        EigenResult er = solve_constrained_from(nfG, nfB, g, r, scfg, u_prev);
        u_prev = er.u_r;
        rs.push_back(r);
        lh.push_back(er.lambda_r);
        if (k >= 8 && er.lambda_r >= lam) break; // increasing branch reached the target
    }
    int i0 = 0;
    for (int i = 1; i < int(lh.size()); ++i)
        if (lh[i] < lh[i0]) i0 = i;
    int ib = -1;
    for (int i = i0; i < int(lh.size()); ++i)
        if (lh[i] >= lam) { ib = i; break; }
    if (ib <= 0 || !(lh[ib - 1] < lam)) {
        // target multiplier below the attainable floor of the curve: no bracket
        CriticalPointResult out;
        out.lambda = lam;
        out.method = CriticalMethod::BallLocalMin;
        out.found = false;
        out.phi_value = std::numeric_limits<double>::quiet_NaN();
        out.residual = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double rlo = rs[ib - 1], rhi = rs[ib];
    GridFunction u_best = u_prev;
    for (int it = 0; it < 50; ++it) {
        double rm = std::sqrt(rlo * rhi);
        EigenResult er = solve_constrained_from(nfG, nfB, g, rm, scfg, u_prev);
        u_prev = er.u_r;
        u_best = u_prev;
        if (er.lambda_r < lam) rlo = rm; else rhi = rm;
        if (std::fabs(er.lambda_r - lam) / lam < 1e-9) break;
    }
    double res = weak_residual(nfG, nfB, u_best, lam, eps);
    double phi = phi_value(nfG, nfB, u_best, lam);
    return pack_result(nfG, lam, std::move(u_best), phi, res, CriticalMethod::BallLocalMin, cfg);
}

} // namespace

double estimate_embedding_constant(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                   int samples, const SolverConfig& cfg) {
    if (samples < 100) throw std::invalid_argument("need at least 100 samples");
    if (!nfG.satisfies_growth_bounds()) throw std::runtime_error("(G1) violated");
    const std::size_t N = g.num_nodes();
    auto ratio = [&](const GridFunction& u) { return luxemburg_norm(nfB, u) / norm_2G(nfG, u); };
    double best = ratio(bump_profile(g));
    for (int k = 1; k <= 3; ++k) best = std::max(best, ratio(sine_profile(g, k)));
    GaussianStream gs(cfg.seed);
    for (int s = 0; s < samples; ++s) {
        GridFunction w(g);
        for (auto& x : w.v) x = gs.next();
        best = std::max(best, ratio(w));
    }
    // inverse-power refinement under the variable metric: v = P^{-1}(w u)
    Metric metric;
    metric.setup(g);
    GridFunction u = bump_profile(g);
    for (int k = 0; k < 100; ++k) {
        double sigma = 3e-2 * weighted_rms_image(g, lap_image(u)) + 1e-300;
        if (!metric.factor(nfG, lap_image(u), sigma)) break;
        std::vector<double> rhs(N);
        for (std::size_t i = 0; i < N; ++i) rhs[i] = g.weight() * u.v[i];
        Eigen::VectorXd v = metric.solve(rhs);
        double nn = 0.0;
        for (std::size_t i = 0; i < N; ++i) nn += g.weight() * v[int(i)] * v[int(i)];
        nn = std::sqrt(nn);
        if (!(nn > 0.0) || !std::isfinite(nn)) break;
        for (std::size_t i = 0; i < N; ++i) u.v[i] = v[int(i)] / nn;
        best = std::max(best, ratio(u));
    }
    return best;
}

RegimeReport build_regime_report(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                 int samples, const SolverConfig& cfg) {
    RegimeReport rep;
    rep.expG = delta2_exponents(nfG);
    rep.expB = delta2_exponents(nfB);
    rep.regime = classify_regime(rep.expG, rep.expB);
    rep.embedding_C = estimate_embedding_constant(nfG, nfB, g, samples, cfg);
    rep.rho = std::min(0.5 / rep.embedding_C, 0.5);
    if (rep.regime == Regime::NearZero) rep.lambda_star = lambda_star(rep, rep.rho);
    if (rep.expG.p_minus < rep.expB.p_plus && rep.expG.p_plus > rep.expB.p_minus)
        rep.lambda_star_star = 1.0 / rep.embedding_C;
    std::vector<double> tgrid;
    tgrid.reserve(64);
    for (int i = 0; i < 64; ++i) tgrid.push_back(std::pow(10.0, -8.0 + 8.0 * i / 63.0));
    const double inf = std::numeric_limits<double>::infinity();
    rep.density_lower_ok_B = check_condition_L(nfB, rep.expB.p_minus, inf, tgrid);
    rep.density_lower_ok_G = check_condition_L(nfG, rep.expG.p_minus, inf, tgrid);
    if (g.dim == 1) {
        rep.subcritical = true;
    } else {
        try {
            double f1 = sobolev_conjugate_inverse(nfG, 2, 10.0, 2);
            double f2 = sobolev_conjugate_inverse(nfG, 2, 100.0, 2);
            double inv_slope = std::log(f2 / f1) / std::log(10.0);
            rep.subcritical = rep.expB.p_plus < 1.0 / inv_slope - 0.1;
        } catch (const std::runtime_error&) {
            rep.subcritical = true; // conjugate diverges: embeds into every Orlicz target
        }
    }
    return rep;
}

double lambda_star(const RegimeReport& rep, double rho) {
    if (rep.regime != Regime::NearZero)
        throw std::invalid_argument("threshold requires the near-zero regime");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
    if (!(rep.embedding_C * rho < 1.0))
        throw std::runtime_error("rho too large for embedding constant");
    return std::pow(rho, rep.expG.p_plus - rep.expB.p_minus) / (2.0 * rep.embedding_C);
}

double threshold_F(const RegimeReport& rep, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("profile argument must be positive");
    double e = t < 1.0 ? rep.expG.p_minus - rep.expB.p_plus : rep.expG.p_plus - rep.expB.p_minus;
    return std::pow(t, e) / rep.embedding_C;
}

CriticalPointResult find_critical_point(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                        double lambda, const RegimeReport& rep,
                                        const SolverConfig& cfg) {
    if (!nfG.satisfies_growth_bounds() || !nfB.satisfies_growth_bounds())
        throw std::runtime_error("(G1) violated");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    switch (rep.regime) {
    case Regime::WholeLineCoercive:
        return critical_by_descent(nfG, nfB, g, lambda, 0.0, cfg);
    case Regime::NearZero:
        return critical_by_descent(nfG, nfB, g, lambda, rep.rho, cfg);
    case Regime::WholeLineSuperlinear:
    case Regime::NearInfinity:
        return critical_by_sphere(nfG, nfB, g, lambda, cfg);
    case Regime::Unclassified:
        break;
    }
    throw std::invalid_argument("cannot locate critical points in an unclassified regime");
}

std::vector<CriticalPointResult> scan_spectrum(const NFunction& nfG, const NFunction& nfB,
                                               const Grid& g, const std::vector<double>& lambdas,
                                               const RegimeReport& rep, const SolverConfig& cfg) {
    std::vector<CriticalPointResult> out;
    out.reserve(lambdas.size());
    for (double lam : lambdas) out.push_back(find_critical_point(nfG, nfB, g, lam, rep, cfg));
    return out;
}

GridFunction anti_sobolev_witness(const NFunction& nfG, const NFunction& nfB, const Grid& g,
                                  double C_target, const SolverConfig& cfg) {
    if (!(C_target > 0.0)) throw std::invalid_argument("target constant must be positive");
    RegimeReport rep = build_regime_report(nfG, nfB, g, 200, cfg);
    if (rep.regime != Regime::NearZero && rep.regime != Regime::WholeLineCoercive)
        throw std::invalid_argument("witness construction needs a coercive or near-zero regime");
    double lam = C_target / 2.0;
    if (rep.regime == Regime::NearZero) lam = std::min(lam, rep.lambda_star / 2.0);
    while (lam >= 1e-10) {
        CriticalPointResult res = find_critical_point(nfG, nfB, g, lam, rep, cfg);
        if (res.found) return std::move(*res.u);
        lam /= 4.0;
    }
    throw std::runtime_error("witness not found at this resolution");
}

} // namespace obh
