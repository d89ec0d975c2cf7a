// NEON variants (aarch64, 2 doubles per vector). Mirrors the AVX2 file.
#include "obh/kernels.hpp"
#if defined(__aarch64__)
#include <arm_neon.h>
#include <cmath>

namespace obh::kern {
namespace {

void second_diff_v(const double* u, std::size_t n, double inv_h2, double* y) {
    if (n < 4) { scalar_ops.second_diff(u, n, inv_h2, y); return; }
    const float64x2_t vh = vdupq_n_f64(inv_h2);
    y[0] = (-2.0 * u[0] + u[1]) * inv_h2;
    std::size_t i = 1;
    for (; i + 2 < n; i += 2) {
        float64x2_t a = vld1q_f64(u + i - 1);
        float64x2_t b = vld1q_f64(u + i);
        float64x2_t c = vld1q_f64(u + i + 1);
        float64x2_t s = vfmaq_n_f64(vaddq_f64(a, c), b, -2.0);
        vst1q_f64(y + i, vmulq_f64(s, vh));
    }
    for (; i + 1 < n; ++i) y[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
    y[n - 1] = (u[n - 2] - 2.0 * u[n - 1]) * inv_h2;
}

void five_point_v(const double* u, std::size_t nx, std::size_t ny, double inv_h2, double* y) {
    if (nx < 4) { scalar_ops.five_point(u, nx, ny, inv_h2, y); return; }
    const float64x2_t vh = vdupq_n_f64(inv_h2);
    const float64x2_t vz = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        const double* row = u + j * nx;
        const double* lo = j > 0 ? row - nx : nullptr;
        const double* hi = j + 1 < ny ? row + nx : nullptr;
        double* out = y + j * nx;
        {
            double s = -4.0 * row[0] + row[1];
            if (lo) s += lo[0];
            if (hi) s += hi[0];
            out[0] = s * inv_h2;
        }
        std::size_t i = 1;
        for (; i + 2 < nx; i += 2) {
            float64x2_t c = vld1q_f64(row + i);
            float64x2_t s = vaddq_f64(vld1q_f64(row + i - 1), vld1q_f64(row + i + 1));
            s = vaddq_f64(s, lo ? vld1q_f64(lo + i) : vz);
            s = vaddq_f64(s, hi ? vld1q_f64(hi + i) : vz);
            s = vfmaq_n_f64(s, c, -4.0);
            vst1q_f64(out + i, vmulq_f64(s, vh));
        }
        for (; i < nx; ++i) {
            double s = -4.0 * row[i] + row[i - 1];
            if (i + 1 < nx) s += row[i + 1];
            if (lo) s += lo[i];
            if (hi) s += hi[i];
            out[i] = s * inv_h2;
        }
    }
}

double dot_v(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_v(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double max_abs_v(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void axpy_v(double a, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), a));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_v(double a, double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), a));
    for (; i < n; ++i) x[i] *= a;
}

} // namespace

const Ops neon_ops = {second_diff_v, five_point_v, dot_v, sum_v, max_abs_v, axpy_v, scal_v};

} // namespace obh::kern
#endif
