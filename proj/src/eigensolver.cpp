#include "obh/eigensolver.hpp"
#include "obh/biharmonic.hpp"
#include "obh/dense.hpp"
#include "obh/kernels.hpp"
#include "obh/laplacian.hpp"
#include "obh/orlicz.hpp"
#include "obh/parallel.hpp"
#include "obh/rng.hpp"
#include "variable_metric.hpp"
#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

namespace obh {
namespace {

using detail::Metric;
using detail::weighted_rms_image;

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    return kern::dot(a.data(), b.data(), a.size());
}

double dotv(const std::vector<double>& a, const Eigen::VectorXd& b) {
    return kern::dot(a.data(), b.data(), a.size());
}

void require_growth(const NFunction& nfG) {
    if (!nfG.satisfies_growth_bounds()) throw std::runtime_error("(G1) violated");
}

// gradient wrt u of the regularized energy, image already at hand
std::vector<double> energy_grad_from_image(const NFunction& nfG, const Grid& g,
                                           const LapImage& img, double eps) {
    auto reg = [&](double t) {
        if (eps == 0.0) return nfG.g(t);
        double s = std::sqrt(t * t + eps * eps);
        return nfG.ga(s) * t / s;
    };
    std::vector<double> yi(img.interior.size()), yb(img.boundary.size());
    const double wi = interior_weight(g), wb = boundary_weight(g);
    for (std::size_t i = 0; i < yi.size(); ++i) yi[i] = wi * reg(img.interior[i]);
    for (std::size_t i = 0; i < yb.size(); ++i) yb[i] = wb * reg(img.boundary[i]);
    return lap_adjoint(g, yi.data(), yb.data());
}

double quotient_from_image(const NFunction& nfG, const NFunction& nfA, const Grid& g,
                           const LapImage& img, const std::vector<double>& u) {
    double num = 0.0;
    for (double t : img.interior) num += interior_weight(g) * nfG.ga(std::fabs(t)) * std::fabs(t);
    for (double t : img.boundary) num += boundary_weight(g) * nfG.ga(std::fabs(t)) * std::fabs(t);
    double den = 0.0;
    for (double t : u) den += g.weight() * nfA.ga(std::fabs(t)) * std::fabs(t);
    return num / den;
}

double residual_from_grad(const NFunction& nfA, const Grid& g, const std::vector<double>& grad,
                          const std::vector<double>& u, double lam) {
    const double w = g.weight();
    double gn2 = 0.0, rn2 = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
        gn2 += w * grad[i] * grad[i];
        double ri = grad[i] - lam * w * nfA.g(u[i]);
        rn2 += w * ri * ri;
    }
    return std::sqrt(rn2) / std::max(1.0, std::sqrt(gn2));
}

EigenResult run_one_start(const NFunction& nfG, const NFunction& nfA, const Grid& g, double r,
                          const SolverConfig& cfg, GridFunction u, double eps, Metric& metric) {
    const std::size_t N = g.num_nodes();
    u = project_to_sphere(nfA, u, r);
    LapImage img = lap_image(u);
    double E = modular_image(nfG, g, img);
    double sigma = 3e-2 * weighted_rms_image(g, img);
    double lam = 0.0, res = 1.0;
    EigenResult out;
    out.r = r;
    out.eps_used = eps;

    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        std::vector<double> grad = energy_grad_from_image(nfG, g, img, eps);
        lam = quotient_from_image(nfG, nfA, g, img, u.v);
        res = residual_from_grad(nfA, g, grad, u.v, lam);
        if (res < cfg.grad_tol) {
            out.converged = true;
            break;
        }
        std::vector<double> c(N);
        for (std::size_t i = 0; i < N; ++i) c[i] = g.weight() * nfA.g(u.v[i]);

        bool newton = res < 1e-4;
        double rms = weighted_rms_image(g, img);
        if (newton) sigma = std::max(eps, 1e-10 * rms);
        if (!metric.factor(nfG, img, sigma)) {
            sigma = std::max(sigma * 10.0, 1e-4 * rms);
            continue;
        }
        Eigen::VectorXd dg = metric.solve(grad);
        Eigen::VectorXd dc = metric.solve(c);
        double mu = dotv(c, dg) / dotv(c, dc);
        std::vector<double> d(N);
        for (std::size_t i = 0; i < N; ++i) d[i] = -(dg[int(i)] - mu * dc[int(i)]);
        double gd = dotv(grad, d);
        if (gd >= 0.0) { // fall back to the tangent-projected steepest direction
            double cc = dotv(c, c);
            double gc = dotv(grad, c);
            for (std::size_t i = 0; i < N; ++i) d[i] = -(grad[i] - (gc / cc) * c[i]);
            gd = dotv(grad, d);
        }

        auto trial = [&](double t) {
            GridFunction ut = u;
            kern::axpy(t, d.data(), ut.data(), N);
            return project_to_sphere(nfA, ut, r);
        };
        const double band = 1e-13 * std::max(1.0, std::fabs(E));
        bool moved = false;
        if (newton) {
            double t = cfg.step0;
            for (int k = 0; k < 30; ++k) {
                GridFunction ut = trial(t);
                LapImage img_t = lap_image(ut);
                double Et = modular_image(nfG, g, img_t);
                std::vector<double> grad_t = energy_grad_from_image(nfG, g, img_t, eps);
                double lam_t = quotient_from_image(nfG, nfA, g, img_t, ut.v);
                double res_t = residual_from_grad(nfA, g, grad_t, ut.v, lam_t);
                if (res_t <= res * (1.0 - 1e-3 * t) && Et <= E + band) {
                    out.trace.max_energy_uphill =
                        std::max(out.trace.max_energy_uphill, (Et - E) / std::max(1.0, std::fabs(E)));
                    u = std::move(ut);
                    img = std::move(img_t);
                    E = Et;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
        }
        if (!moved) {
            double t = cfg.step0;
            GridFunction ut;
            LapImage img_t;
            double Et = 0.0;
            for (;;) {
                ut = trial(t);
                lap_image_into(g, ut.data(), img_t);
                Et = modular_image(nfG, g, img_t);
                if (Et <= E + cfg.armijo_c * t * gd + 8e-16 * std::fabs(E) || t < 1e-18) break;
                t *= cfg.backtrack;
            }
            out.trace.max_energy_uphill =
                std::max(out.trace.max_energy_uphill, (Et - E) / std::max(1.0, std::fabs(E)));
            u = std::move(ut);
            img = std::move(img_t);
            E = Et;
            rms = weighted_rms_image(g, img);
            if (t >= 0.25)
                sigma = std::max(eps, std::min(0.5 * sigma, 3e-2 * rms));
            else if (t < 1e-8)
                sigma = std::min(4.0 * sigma, 3e-2 * rms);
        }
        out.trace.max_sphere_violation =
            std::max(out.trace.max_sphere_violation, std::fabs(modular(nfA, u) - r));
    }
    if (!out.converged) { // final stats at the last iterate
        std::vector<double> grad = energy_grad_from_image(nfG, g, img, eps);
        lam = quotient_from_image(nfG, nfA, g, img, u.v);
        res = residual_from_grad(nfA, g, grad, u.v, lam);
    }
    // sign convention: the largest-magnitude entry is positive
    std::size_t imax = 0;
    for (std::size_t i = 1; i < N; ++i)
        if (std::fabs(u.v[i]) > std::fabs(u.v[imax])) imax = i;
    if (u.v[imax] < 0.0)
        for (auto& x : u.v) x = -x;
    out.u_r = std::move(u);
    out.c_r = E;
    out.lambda_r = lam;
    out.residual = res;
    out.iterations = it;
    return out;
}

GridFunction gaussian_start(const Grid& g, std::uint64_t seed) {
    GaussianStream gs(seed);
    GridFunction u(g);
    for (auto& x : u.v) x = gs.next();
    return u;
}

} // namespace

GridFunction project_to_sphere(const NFunction& nfA, const GridFunction& u, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    if (kern::max_abs(u.data(), u.size()) == 0.0)
        throw std::invalid_argument("cannot project zero onto modular sphere");
    auto rho = [&](double s) {
        double acc = 0.0;
        for (double x : u.v) acc += nfA.G(s * x);
        return u.grid.weight() * acc;
    };
    double lo = 1.0, hi = 1.0;
    if (rho(1.0) < r) {
        do {
            hi *= 2.0;
            if (hi > 1e300) throw std::runtime_error("modular sphere projection overflow");
        } while (rho(hi) < r);
        lo = hi * 0.5;
    } else {
        do {
            lo *= 0.5;
            if (lo < 1e-300) throw std::runtime_error("modular sphere projection underflow");
        } while (rho(lo) > r);
        hi = lo * 2.0;
    }
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        if (rho(mid) < r) lo = mid; else hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    double s = 0.5 * (lo + hi);
    GridFunction out = u;
    kern::scal(s, out.data(), out.size());
    return out;
}

EigenResult solve_constrained_pair(const NFunction& nfG, const NFunction& nfA, const Grid& g,
                                   double r, const SolverConfig& cfg) {
    require_growth(nfG);
    if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    const double eps = cfg.eps_reg >= 0.0 ? cfg.eps_reg : default_eps_reg(nfG, g);
    if (eps == 0.0 && nfG.singular_density())
        throw std::runtime_error("singular density requires regularization");
    const int ns = std::max(1, cfg.multistart);
    std::vector<EigenResult> results(ns);
    parallel_for(std::size_t(ns), [&](std::size_t k) {
        Metric metric;
        metric.setup(g);
        GridFunction u0 = gaussian_start(g, cfg.seed + k);
        results[k] = run_one_start(nfG, nfA, g, r, cfg, std::move(u0), eps, metric);
    });
    int best = -1;
    for (int k = 0; k < ns; ++k) {
        if (best < 0) { best = k; continue; }
        const EigenResult& a = results[k];
        const EigenResult& b = results[best];
        if (a.converged != b.converged) {
            if (a.converged) best = k;
        } else if (a.converged) {
            if (a.c_r < b.c_r) best = k;
        } else if (a.residual < b.residual) {
            best = k;
        }
    }
    return results[best];
}

EigenResult solve_constrained(const NFunction& nfG, const Grid& g, double r, const SolverConfig& cfg) {
    return solve_constrained_pair(nfG, nfG, g, r, cfg);
}

EigenResult solve_constrained_from(const NFunction& nfG, const NFunction& nfA, const Grid& g,
                                   double r, const SolverConfig& cfg, const GridFunction& u0) {
    require_growth(nfG);
    if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    const double eps = cfg.eps_reg >= 0.0 ? cfg.eps_reg : default_eps_reg(nfG, g);
    if (eps == 0.0 && nfG.singular_density())
        throw std::runtime_error("singular density requires regularization");
    Metric metric;
    metric.setup(g);
    return run_one_start(nfG, nfA, g, r, cfg, u0, eps, metric);
}

double rayleigh_lambda0(const NFunction& nfG, const Grid& g, const SolverConfig& cfg) {
    require_growth(nfG);
    const std::size_t N = g.num_nodes();
    const double h = g.h();

    auto qval = [&](const GridFunction& u) {
        return quotient_from_image(nfG, nfG, g, lap_image(u), u.v);
    };
    auto dphi = [&](double t) { // d/dt of g(|t|)|t|, continuous extension at 0
        double a = std::fabs(t);
        if (a == 0.0) return 0.0;
        return (nfG.gp(a) * a + nfG.ga(a)) * (t < 0 ? -1.0 : 1.0);
    };

    // bump profile (x(1-x))^2, tensorized in 2D
    GridFunction bump(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            double x = (i + 1) * h;
            bump.v[i] = x * x * (1 - x) * (1 - x);
        }
    } else {
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = (i + 1) * h, y = (j + 1) * h;
                bump.v[std::size_t(j) * g.n + i] = x * x * (1 - x) * (1 - x) * y * y * (1 - y) * (1 - y);
            }
    }
    auto image_amp = [&](const GridFunction& u) {
        LapImage img = lap_image(u);
        return std::max(kern::max_abs(img.interior.data(), img.interior.size()),
                        kern::max_abs(img.boundary.data(), img.boundary.size()));
    };
    std::vector<GridFunction> starts;
    double amp = image_amp(bump);
    for (double s : {0.01, 1.0, 100.0, 1e-4, 1e4}) {
        GridFunction u = bump;
        kern::scal(s / amp, u.data(), N);
        starts.push_back(std::move(u));
    }
    GaussianStream gs(cfg.seed);
    const double gscale[3] = {0.01, 1.0, 100.0};
    for (int k = 0; k < 3; ++k) {
        GridFunction u(g);
        for (auto& x : u.v) x = gs.next();
        kern::scal(gscale[k] / image_amp(u), u.data(), N);
        starts.push_back(std::move(u));
    }

    std::vector<double> finals(starts.size());
    parallel_for(starts.size(), [&](std::size_t si) {
        Metric metric;
        metric.setup(g);
        GridFunction u = starts[si];
        double q = qval(u);
        int stall = 0;
        for (int it = 0; it < 200; ++it) {
            LapImage img = lap_image(u);
            double num = 0.0;
            for (double t : img.interior)
                num += interior_weight(g) * nfG.ga(std::fabs(t)) * std::fabs(t);
            for (double t : img.boundary)
                num += boundary_weight(g) * nfG.ga(std::fabs(t)) * std::fabs(t);
            double den = 0.0;
            for (double t : u.v) den += g.weight() * nfG.ga(std::fabs(t)) * std::fabs(t);
            double Q = num / den;
            std::vector<double> yi(img.interior.size()), yb(img.boundary.size());
            for (std::size_t i = 0; i < yi.size(); ++i)
                yi[i] = interior_weight(g) * dphi(img.interior[i]);
            for (std::size_t i = 0; i < yb.size(); ++i)
                yb[i] = boundary_weight(g) * dphi(img.boundary[i]);
            std::vector<double> gq = lap_adjoint(g, yi.data(), yb.data());
            for (std::size_t i = 0; i < N; ++i)
                gq[i] = (gq[i] - Q * g.weight() * dphi(u.v[i])) / den;

            double sigma = std::max(3e-2 * weighted_rms_image(g, img), 1e-300);
            bool ok = false;
            for (int tries = 0; tries < 6 && !ok; ++tries, sigma *= 10.0)
                ok = metric.factor(nfG, img, sigma);
            if (!ok) break;
            Eigen::VectorXd dv = metric.solve(gq);

            double qbest = q;
            double tbest = 0.0;
            for (int e = -8; e <= 2; ++e) {
                double t = std::ldexp(1.0, e);
                GridFunction ut = u;
                for (std::size_t i = 0; i < N; ++i) ut.v[i] -= t * dv[int(i)];
                if (kern::max_abs(ut.data(), N) < 1e-280) continue;
                double qt = qval(ut);
                if (qt < qbest) {
                    qbest = qt;
                    tbest = t;
                }
            }
            if (qbest >= q * (1.0 - 1e-14)) {
                if (++stall >= 3) break;
            } else {
                stall = 0;
            }
            if (tbest > 0.0) {
                for (std::size_t i = 0; i < N; ++i) u.v[i] -= tbest * dv[int(i)];
                q = qbest;
            }
        }
        finals[si] = q;
    });
    double best = finals[0];
    for (double q : finals) best = std::min(best, q);
    return best;
}

BoundsReport check_lower_bounds(const EigenResult& res, const NFunction& nfG, const SolverConfig& cfg) {
    BoundsReport rep;
    rep.lambda_r = res.lambda_r;
    ExponentPair ex = delta2_exponents(nfG);
    rep.exponent_bound = ex.p_minus * res.c_r / (res.r * ex.p_plus);
    rep.lambda0_estimate = rayleigh_lambda0(nfG, res.u_r.grid, cfg);
    rep.ok_exponent = res.lambda_r >= rep.exponent_bound * (1.0 - 1e-6);
    rep.ok_lambda0 = res.lambda_r >= rep.lambda0_estimate * (1.0 - 1e-6);
    return rep;
}

} // namespace obh
