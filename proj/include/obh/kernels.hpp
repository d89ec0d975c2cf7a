#pragma once
// Hot inner loops: FD stencils and dense-vector primitives.
// Scalar reference implementations plus SIMD variants selected at runtime.
// Override with ORLICZ_BIHARM_SIMD=scalar|avx2|neon|auto (default auto).
#include <cstddef>

namespace obh::kern {

struct Ops {
    // y[i] = (u[i-1] - 2 u[i] + u[i+1]) * inv_h2, Dirichlet ends (u[-1]=u[n]=0)
    void (*second_diff)(const double* u, std::size_t n, double inv_h2, double* y);
    // y[i,j] = (u[i-1,j]+u[i+1,j]+u[i,j-1]+u[i,j+1]-4u[i,j]) * inv_h2, row-major nx*ny, Dirichlet
    void (*five_point)(const double* u, std::size_t nx, std::size_t ny, double inv_h2, double* y);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
    void (*axpy)(double a, const double* x, double* y, std::size_t n); // y += a*x
    void (*scal)(double a, double* x, std::size_t n);                  // x *= a
};

extern const Ops scalar_ops;
#ifdef OBH_BUILD_AVX2
extern const Ops avx2_ops;
#endif
#ifdef OBH_BUILD_NEON
extern const Ops neon_ops;
#endif

// Active table (initialized on first use from CPU features + env override).
const Ops& active();
const char* active_backend_name();
// Force a backend by name for tests; returns false if unavailable on this host.
bool force_backend(const char* name);

inline void second_diff(const double* u, std::size_t n, double inv_h2, double* y) { active().second_diff(u, n, inv_h2, y); }
inline void five_point(const double* u, std::size_t nx, std::size_t ny, double inv_h2, double* y) { active().five_point(u, nx, ny, inv_h2, y); }
inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double max_abs(const double* x, std::size_t n) { return active().max_abs(x, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void scal(double a, double* x, std::size_t n) { active().scal(a, x, n); }

} // namespace obh::kern
