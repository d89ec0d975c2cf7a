#include "obh/kernels.hpp"
#include <cmath>

namespace obh::kern {
namespace {

void second_diff_s(const double* u, std::size_t n, double inv_h2, double* y) {
    if (n == 0) return;
    if (n == 1) { y[0] = -2.0 * u[0] * inv_h2; return; }
    y[0] = (-2.0 * u[0] + u[1]) * inv_h2;
    for (std::size_t i = 1; i + 1 < n; ++i)
        y[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
    y[n - 1] = (u[n - 2] - 2.0 * u[n - 1]) * inv_h2;
}

void five_point_s(const double* u, std::size_t nx, std::size_t ny, double inv_h2, double* y) {
    for (std::size_t j = 0; j < ny; ++j) {
        const double* row = u + j * nx;
        const double* lo = j > 0 ? row - nx : nullptr;
        const double* hi = j + 1 < ny ? row + nx : nullptr;
        double* out = y + j * nx;
        for (std::size_t i = 0; i < nx; ++i) {
            double s = -4.0 * row[i];
            if (i > 0) s += row[i - 1];
            if (i + 1 < nx) s += row[i + 1];
            if (lo) s += lo[i];
            if (hi) s += hi[i];
            out[i] = s * inv_h2;
        }
    }
}

double dot_s(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_s(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double max_abs_s(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void axpy_s(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_s(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

} // namespace

const Ops scalar_ops = {second_diff_s, five_point_s, dot_s, sum_s, max_abs_s, axpy_s, scal_s};

} // namespace obh::kern
