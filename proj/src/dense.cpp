#include "obh/dense.hpp"
#include "obh/laplacian.hpp"
#include "obh/orlicz.hpp"
#include <cmath>
#include <stdexcept>
#include <vector>

namespace obh {

Eigen::SparseMatrix<double> image_jacobian(const Grid& g) {
    const int N = int(g.num_nodes());
    const int nb = int(boundary_count(g));
    const double inv_h2 = 1.0 / (g.h() * g.h());
    std::vector<Eigen::Triplet<double>> trip;
    if (g.dim == 1) {
        trip.reserve(3 * N + 2);
        for (int i = 0; i < N; ++i) {
            if (i > 0) trip.emplace_back(i, i - 1, inv_h2);
            trip.emplace_back(i, i, -2.0 * inv_h2);
            if (i + 1 < N) trip.emplace_back(i, i + 1, inv_h2);
        }
        trip.emplace_back(N, 0, 2.0 * inv_h2);
        trip.emplace_back(N + 1, N - 1, 2.0 * inv_h2);
    } else {
        const int n = g.n;
        trip.reserve(5 * N + nb);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                int row = j * n + i;
                trip.emplace_back(row, row, -4.0 * inv_h2);
                if (i > 0) trip.emplace_back(row, row - 1, inv_h2);
                if (i + 1 < n) trip.emplace_back(row, row + 1, inv_h2);
                if (j > 0) trip.emplace_back(row, row - n, inv_h2);
                if (j + 1 < n) trip.emplace_back(row, row + n, inv_h2);
            }
        for (int i = 0; i < n; ++i) trip.emplace_back(N + i, i, 2.0 * inv_h2);
        for (int i = 0; i < n; ++i) trip.emplace_back(N + n + i, (n - 1) * n + i, 2.0 * inv_h2);
        for (int j = 0; j < n; ++j) trip.emplace_back(N + 2 * n + j, j * n, 2.0 * inv_h2);
        for (int j = 0; j < n; ++j) trip.emplace_back(N + 3 * n + j, j * n + (n - 1), 2.0 * inv_h2);
    }
    Eigen::SparseMatrix<double> J(N + nb, N);
    J.setFromTriplets(trip.begin(), trip.end());
    J.makeCompressed();
    return J;
}

Eigen::VectorXd image_weights(const Grid& g) {
    const int N = int(g.num_nodes());
    const int nb = int(boundary_count(g));
    Eigen::VectorXd w(N + nb);
    w.head(N).setConstant(interior_weight(g));
    w.tail(nb).setConstant(boundary_weight(g));
    return w;
}

Eigen::MatrixXd quadratic_form(const Grid& g) {
    Eigen::SparseMatrix<double> J = image_jacobian(g);
    Eigen::VectorXd w = image_weights(g);
    Eigen::SparseMatrix<double> A = J.transpose() * w.asDiagonal() * J;
    return Eigen::MatrixXd(A);
}

DenseEig smallest_eig_sym(Eigen::MatrixXd A) {
    const int n = int(A.rows());
    if (A.cols() != n) throw std::invalid_argument("matrix must be square");
    const Eigen::MatrixXd A0 = A; // kept for the Rayleigh-quotient polish
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
    const double fro = A.norm();
    DenseEig out;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off2 += A(p, q) * A(p, q);
        out.off_final = std::sqrt(2.0 * off2);
        out.sweeps = sweep;
        if (out.off_final <= 1e-12 * fro) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }
    int imin = 0;
    for (int i = 1; i < n; ++i)
        if (A(i, i) < A(imin, imin)) imin = i;
    out.value = A(imin, imin);
    out.vec = V.col(imin);
    // Rayleigh-quotient polish: the Jacobi exit tolerance scales with the
    // Frobenius norm, which for stiff stencils leaves the small eigenpair
    // several digits short; a couple of shifted solves fixes that.
    Eigen::VectorXd v = out.vec.normalized();
    double lam = v.dot(A0 * v);
    for (int k = 0; k < 3; ++k) {
        double res = (A0 * v - lam * v).norm() / std::max(1e-300, (A0 * v).norm());
        if (res < 1e-13) break;
        Eigen::MatrixXd S = A0 - lam * Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(S).solve(v);
        double nx = x.norm();
        if (!(nx > 0.0) || !std::isfinite(nx)) break;
        v = x / nx;
        lam = v.dot(A0 * v);
    }
    out.value = lam;
    out.vec = v;
    return out;
}

BeamOracle run_oracle_beam(const Grid& g, double p_flag) {
    if (p_flag != 2.0) throw std::runtime_error("oracle is linear-only");
    if (g.n < 10) throw std::invalid_argument("oracle grid too coarse");
    Eigen::MatrixXd A = quadratic_form(g);
    DenseEig e = smallest_eig_sym(A / g.weight());
    BeamOracle out;
    out.lambda_min = e.value;
    out.sweeps = e.sweeps;
    GridFunction u(g);
    for (std::size_t i = 0; i < u.size(); ++i) u.v[i] = e.vec[int(i)];
    int imax = 0;
    for (int i = 1; i < int(u.size()); ++i)
        if (std::fabs(u.v[i]) > std::fabs(u.v[imax])) imax = i;
    double scale = 1.0 / wnorm2(g, u.v);
    if (u.v[imax] < 0) scale = -scale;
    for (auto& x : u.v) x *= scale;
    out.u = std::move(u);
    return out;
}

} // namespace obh
