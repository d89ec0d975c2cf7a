#include "obh/biharmonic.hpp"
#include "obh/laplacian.hpp"
#include "obh/orlicz.hpp"
#include <cmath>
#include <stdexcept>

namespace obh {
namespace {

// regularized odd density: g(sqrt(t^2+eps^2)) * t / sqrt(t^2+eps^2)
inline double reg_density(const NFunction& nf, double t, double eps) {
    if (eps == 0.0) return nf.g(t);
    double s = std::sqrt(t * t + eps * eps);
    return nf.ga(s) * t / s;
}

} // namespace

double default_eps_reg(const NFunction& nfG, const Grid& g) {
    return nfG.singular_density() ? 1e-8 * g.h() : 0.0;
}

double energy(const NFunction& nfG, const GridFunction& u) {
    return modular_image(nfG, u.grid, lap_image(u));
}

std::vector<double> energy_gradient(const NFunction& nfG, const GridFunction& u, double eps_reg) {
    if (eps_reg == 0.0 && nfG.singular_density())
        throw std::runtime_error("singular density requires regularization");
    const Grid& g = u.grid;
    LapImage img = lap_image(u);
    const double wi = interior_weight(g), wb = boundary_weight(g);
    for (auto& t : img.interior) t = wi * reg_density(nfG, t, eps_reg);
    for (auto& t : img.boundary) t = wb * reg_density(nfG, t, eps_reg);
    return lap_adjoint(g, img.interior.data(), img.boundary.data());
}

double quotient_lambda(const NFunction& nfG, const NFunction& nfB, const GridFunction& u) {
    const Grid& g = u.grid;
    LapImage img = lap_image(u);
    double num = 0.0;
    for (double t : img.interior) num += interior_weight(g) * nfG.ga(std::fabs(t)) * std::fabs(t);
    for (double t : img.boundary) num += boundary_weight(g) * nfG.ga(std::fabs(t)) * std::fabs(t);
    double den = 0.0;
    for (double t : u.v) den += g.weight() * nfB.ga(std::fabs(t)) * std::fabs(t);
    return num / den;
}

double weak_residual(const NFunction& nfG, const NFunction& nfB, const GridFunction& u,
                     double lambda, double eps_reg) {
    const Grid& g = u.grid;
    if (eps_reg < 0.0) eps_reg = default_eps_reg(nfG, g);
    std::vector<double> grad = energy_gradient(nfG, u, eps_reg);
    double gn = wnorm2(g, grad);
    const double w = g.weight();
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= lambda * w * nfB.g(u.v[i]);
    return wnorm2(g, grad) / std::max(1.0, gn);
}

double phi_value(const NFunction& nfG, const NFunction& nfB, const GridFunction& u, double lambda) {
    return energy(nfG, u) - lambda * modular(nfB, u);
}

std::vector<double> phi_gradient(const NFunction& nfG, const NFunction& nfB, const GridFunction& u,
                                 double lambda, double eps_reg) {
    std::vector<double> grad = energy_gradient(nfG, u, eps_reg);
    const double w = u.grid.weight();
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= lambda * w * nfB.g(u.v[i]);
    return grad;
}

double phi_residual(const NFunction& nfG, const NFunction& nfB, const GridFunction& u,
                    double lambda, double eps_reg) {
    const Grid& g = u.grid;
    if (eps_reg < 0.0) eps_reg = default_eps_reg(nfG, g);
    std::vector<double> ge = energy_gradient(nfG, u, eps_reg);
    double gn = wnorm2(g, ge);
    const double w = g.weight();
    for (std::size_t i = 0; i < ge.size(); ++i) ge[i] -= lambda * w * nfB.g(u.v[i]);
    return wnorm2(g, ge) / std::max(1.0, gn);
}

} // namespace obh
