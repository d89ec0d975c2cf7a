#pragma once
// Discrete Laplacian image for the clamped (Dirichlet + reflected ghost)
// plate/beam problem. The image carries interior stencil values plus the
// boundary-node values 2 u_adj / h^2 that a clamped edge contributes;
// square corners vanish identically and are skipped.
#include "obh/grid.hpp"

namespace obh {

struct LapImage {
    std::vector<double> interior; // one per interior node, quadrature weight h^dim
    std::vector<double> boundary; // 1D: 2 endpoint values, 2D: 4n edge values, weight h^dim/2
};

inline std::size_t boundary_count(const Grid& g) { return g.dim == 1 ? 2 : 4 * std::size_t(g.n); }
inline double interior_weight(const Grid& g) { return g.weight(); }
inline double boundary_weight(const Grid& g) { return 0.5 * g.weight(); }

void lap_image_into(const Grid& g, const double* u, LapImage& img);
LapImage lap_image(const Grid& g, const double* u);
inline LapImage lap_image(const GridFunction& u) { return lap_image(u.grid, u.data()); }

// Adjoint of the image map: inputs are already weighted image-space vectors.
void lap_adjoint_into(const Grid& g, const double* yi, const double* yb, double* out);
std::vector<double> lap_adjoint(const Grid& g, const double* yi, const double* yb);

// Interior stencil alone (matrix-free Dirichlet Laplacian).
GridFunction apply_laplacian(const GridFunction& u);

} // namespace obh
