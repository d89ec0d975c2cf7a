// AVX2+FMA variants. Compiled with -mavx2 -mfma for this TU only; selected at runtime.
#include "obh/kernels.hpp"
#include <immintrin.h>
#include <cmath>

namespace obh::kern {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void second_diff_v(const double* u, std::size_t n, double inv_h2, double* y) {
    if (n < 6) { scalar_ops.second_diff(u, n, inv_h2, y); return; }
    const __m256d vh = _mm256_set1_pd(inv_h2);
    const __m256d m2 = _mm256_set1_pd(-2.0);
    y[0] = (-2.0 * u[0] + u[1]) * inv_h2;
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d a = _mm256_loadu_pd(u + i - 1);
        __m256d b = _mm256_loadu_pd(u + i);
        __m256d c = _mm256_loadu_pd(u + i + 1);
        __m256d s = _mm256_fmadd_pd(m2, b, _mm256_add_pd(a, c));
        _mm256_storeu_pd(y + i, _mm256_mul_pd(s, vh));
    }
    for (; i + 1 < n; ++i) y[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
    y[n - 1] = (u[n - 2] - 2.0 * u[n - 1]) * inv_h2;
}

void five_point_v(const double* u, std::size_t nx, std::size_t ny, double inv_h2, double* y) {
    if (nx < 6) { scalar_ops.five_point(u, nx, ny, inv_h2, y); return; }
    const __m256d vh = _mm256_set1_pd(inv_h2);
    const __m256d m4 = _mm256_set1_pd(-4.0);
    const __m256d vz = _mm256_setzero_pd();
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
        for (; i + 4 < nx; i += 4) {
            __m256d c = _mm256_loadu_pd(row + i);
            __m256d s = _mm256_add_pd(_mm256_loadu_pd(row + i - 1), _mm256_loadu_pd(row + i + 1));
            s = _mm256_add_pd(s, lo ? _mm256_loadu_pd(lo + i) : vz);
            s = _mm256_add_pd(s, hi ? _mm256_loadu_pd(hi + i) : vz);
            s = _mm256_fmadd_pd(m4, c, s);
            _mm256_storeu_pd(out + i, _mm256_mul_pd(s, vh));
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
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_v(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double max_abs_v(const double* x, std::size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(x + i)));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_max_pd(lo, hi);
    lo = _mm_max_sd(lo, _mm_unpackhi_pd(lo, lo));
    double m = _mm_cvtsd_f64(lo);
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void axpy_v(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_v(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

} // namespace

const Ops avx2_ops = {second_diff_v, five_point_v, dot_v, sum_v, max_abs_v, axpy_v, scal_v};

} // namespace obh::kern
