#pragma once
// Fourth-order energy E(u) = sum_image w G(Delta u), its gradient with
// optional density regularization, weak residuals, and the multiplier quotient.
#include "obh/grid.hpp"
#include "obh/nfunction.hpp"

namespace obh {

// auto regularization: 1e-8 h for singular densities, 0 otherwise
double default_eps_reg(const NFunction& nfG, const Grid& g);

double energy(const NFunction& nfG, const GridFunction& u);

// gradient of energy; throws "singular density requires regularization"
// when eps_reg == 0 and the density is singular at zero
std::vector<double> energy_gradient(const NFunction& nfG, const GridFunction& u, double eps_reg);

// sum w g(|Du|)|Du| / sum w b(|u|)|u| (raw densities, no regularization)
double quotient_lambda(const NFunction& nfG, const NFunction& nfB, const GridFunction& u);

// || grad E - lambda w b(u) ||_w / max(1, ||grad E||_w); eps_reg < 0 means auto
double weak_residual(const NFunction& nfG, const NFunction& nfB, const GridFunction& u,
                     double lambda, double eps_reg = -1.0);

// free functional Phi_lambda = E - lambda * modular_B and its calculus
double phi_value(const NFunction& nfG, const NFunction& nfB, const GridFunction& u, double lambda);
std::vector<double> phi_gradient(const NFunction& nfG, const NFunction& nfB, const GridFunction& u,
                                 double lambda, double eps_reg);
double phi_residual(const NFunction& nfG, const NFunction& nfB, const GridFunction& u,
                    double lambda, double eps_reg = -1.0);

} // namespace obh
