#pragma once
// Internal: shared variable-metric machinery for the descent solvers.
// The metric is P = J^T diag(w k) J where k is a convex upper envelope of the
// regularized second-derivative density of G along the Laplacian image.
#include "obh/dense.hpp"
#include "obh/grid.hpp"
#include "obh/kernels.hpp"
#include "obh/laplacian.hpp"
#include "obh/nfunction.hpp"
#include <Eigen/Sparse>
#include <cmath>
#include <vector>

namespace obh::detail {

inline double weighted_rms_image(const Grid& g, const LapImage& img) {
    const double wi = interior_weight(g), wb = boundary_weight(g);
    double s = wi * kern::dot(img.interior.data(), img.interior.data(), img.interior.size()) +
               wb * kern::dot(img.boundary.data(), img.boundary.data(), img.boundary.size());
    double mass = wi * double(img.interior.size()) + wb * double(img.boundary.size());
    return std::sqrt(s / mass);
}

// max(g(s)/s, g'(s) t^2/s^2 + g(s) sigma^2/s^3), s = sqrt(t^2 + sigma^2)
inline double envelope_density(const NFunction& nf, double t, double sigma) {
    double s = std::sqrt(t * t + sigma * sigma);
    if (s < 1e-300) s = 1e-300;
    double a = nf.ga(s) / s;
    double b = nf.gp(s) * (t * t) / (s * s) + nf.ga(s) * (sigma * sigma) / (s * s * s);
    return std::max(a, b);
}

struct Metric {
    const Grid* grid = nullptr;
    Eigen::SparseMatrix<double> J;
    Eigen::VectorXd wrow;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
    bool analyzed = false;

    void setup(const Grid& g) {
        grid = &g;
        J = image_jacobian(g);
        wrow = image_weights(g);
    }
    // returns false when the factorization fails (caller bumps sigma)
    bool factor(const NFunction& nf, const LapImage& img, double sigma) {
        Eigen::VectorXd k(wrow.size());
        const std::size_t N = img.interior.size();
        for (std::size_t i = 0; i < N; ++i)
            k[int(i)] = wrow[int(i)] * envelope_density(nf, img.interior[i], sigma);
        for (std::size_t i = 0; i < img.boundary.size(); ++i)
            k[int(N + i)] = wrow[int(N + i)] * envelope_density(nf, img.boundary[i], sigma);
        Eigen::SparseMatrix<double> P = J.transpose() * k.asDiagonal() * J;
        if (!analyzed) {
            llt.analyzePattern(P);
            analyzed = true;
        }
        llt.factorize(P);
        return llt.info() == Eigen::Success;
    }
    Eigen::VectorXd solve(const std::vector<double>& rhs) const {
        Eigen::Map<const Eigen::VectorXd> b(rhs.data(), Eigen::Index(rhs.size()));
        return llt.solve(b);
    }
};

} // namespace obh::detail
