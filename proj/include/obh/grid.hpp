#pragma once
// Uniform Dirichlet grid on the unit interval / square.
// Interior nodes only: 1D x_i = (i+1) h, 2D (x_i, y_j) row-major, h = 1/(n+1).
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace obh {

struct Grid {
    int dim = 1; // 1 or 2
    int n = 0;   // interior nodes per direction

    Grid() = default;
    Grid(int dim_, int n_) : dim(dim_), n(n_) {
        if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
        if (n < 3) throw std::invalid_argument("grid needs at least 3 interior nodes");
    }
    double h() const { return 1.0 / (n + 1); }
    std::size_t num_nodes() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * n; }
    double weight() const { return dim == 1 ? h() : h() * h(); } // quadrature cell volume
    bool operator==(const Grid& o) const { return dim == o.dim && n == o.n; }
};

struct GridFunction {
    Grid grid;
    std::vector<double> v;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), v(g.num_nodes(), 0.0) {}
    GridFunction(const Grid& g, std::vector<double> vals) : grid(g), v(std::move(vals)) {
        if (v.size() != g.num_nodes()) throw std::invalid_argument("grid/value size mismatch");
    }
    std::size_t size() const { return v.size(); }
    double* data() { return v.data(); }
    const double* data() const { return v.data(); }
};

} // namespace obh
