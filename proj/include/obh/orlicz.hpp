#pragma once
// Discrete modulars and Luxemburg norms on grid functions and on
// Laplacian images (the latter defines the second-order norm used throughout).
#include "obh/grid.hpp"
#include "obh/laplacian.hpp"
#include "obh/nfunction.hpp"

namespace obh {

double modular(const NFunction& nf, const GridFunction& u);                   // sum w G(u_i)
double modular_image(const NFunction& nf, const Grid& g, const LapImage& img);
double luxemburg_norm(const NFunction& nf, const GridFunction& u);            // inf{s: modular(u/s)<=1}
double luxemburg_image(const NFunction& nf, const Grid& g, const LapImage& img);
double norm_2G(const NFunction& nf, const GridFunction& u);                   // Luxemburg norm of the image

double wnorm2(const Grid& g, const double* v, std::size_t n);                 // sqrt(sum w v^2)
inline double wnorm2(const Grid& g, const std::vector<double>& v) { return wnorm2(g, v.data(), v.size()); }

} // namespace obh
