#include "obh/laplacian.hpp"
#include "obh/kernels.hpp"

namespace obh {

void lap_image_into(const Grid& g, const double* u, LapImage& img) {
    const std::size_t N = g.num_nodes();
    const double inv_h2 = 1.0 / (g.h() * g.h());
    img.interior.resize(N);
    img.boundary.resize(boundary_count(g));
    if (g.dim == 1) {
        kern::second_diff(u, N, inv_h2, img.interior.data());
        img.boundary[0] = 2.0 * u[0] * inv_h2;
        img.boundary[1] = 2.0 * u[N - 1] * inv_h2;
        return;
    }
    const std::size_t n = g.n;
    kern::five_point(u, n, n, inv_h2, img.interior.data());
    // edge boundary nodes: ghost reflection gives 2 u_adj / h^2; corners are 0 and skipped
    double* b = img.boundary.data();
    for (std::size_t i = 0; i < n; ++i) b[i] = 2.0 * u[i] * inv_h2;                       // bottom
    for (std::size_t i = 0; i < n; ++i) b[n + i] = 2.0 * u[(n - 1) * n + i] * inv_h2;     // top
    for (std::size_t j = 0; j < n; ++j) b[2 * n + j] = 2.0 * u[j * n] * inv_h2;           // left
    for (std::size_t j = 0; j < n; ++j) b[3 * n + j] = 2.0 * u[j * n + (n - 1)] * inv_h2; // right
}

LapImage lap_image(const Grid& g, const double* u) {
    LapImage img;
    lap_image_into(g, u, img);
    return img;
}

void lap_adjoint_into(const Grid& g, const double* yi, const double* yb, double* out) {
    const std::size_t N = g.num_nodes();
    const double inv_h2 = 1.0 / (g.h() * g.h());
    if (g.dim == 1) {
        kern::second_diff(yi, N, inv_h2, out);
        out[0] += 2.0 * yb[0] * inv_h2;
        out[N - 1] += 2.0 * yb[1] * inv_h2;
        return;
    }
    const std::size_t n = g.n;
    kern::five_point(yi, n, n, inv_h2, out);
    for (std::size_t i = 0; i < n; ++i) out[i] += 2.0 * yb[i] * inv_h2;
    for (std::size_t i = 0; i < n; ++i) out[(n - 1) * n + i] += 2.0 * yb[n + i] * inv_h2;
    for (std::size_t j = 0; j < n; ++j) out[j * n] += 2.0 * yb[2 * n + j] * inv_h2;
    for (std::size_t j = 0; j < n; ++j) out[j * n + (n - 1)] += 2.0 * yb[3 * n + j] * inv_h2;
}

std::vector<double> lap_adjoint(const Grid& g, const double* yi, const double* yb) {
    std::vector<double> out(g.num_nodes());
    lap_adjoint_into(g, yi, yb, out.data());
    return out;
}

GridFunction apply_laplacian(const GridFunction& u) {
    GridFunction out(u.grid);
    const double inv_h2 = 1.0 / (u.grid.h() * u.grid.h());
    if (u.grid.dim == 1)
        kern::second_diff(u.data(), u.size(), inv_h2, out.data());
    else
        kern::five_point(u.data(), u.grid.n, u.grid.n, inv_h2, out.data());
    return out;
}

} // namespace obh
