#include "obh/orlicz.hpp"
#include "obh/kernels.hpp"
#include <cmath>

namespace obh {
namespace {

struct Span {
    const double* v;
    std::size_t n;
    double w;
};

double modular_spans(const NFunction& nf, const Span* spans, int k, double inv_s = 1.0) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
        double part = 0.0;
        for (std::size_t i = 0; i < spans[j].n; ++i) part += nf.G(spans[j].v[i] * inv_s);
        acc += spans[j].w * part;
    }
    return acc;
}

double luxemburg_spans(const NFunction& nf, const Span* spans, int k) {
    double m = 0.0;
    for (int j = 0; j < k; ++j) m = std::max(m, kern::max_abs(spans[j].v, spans[j].n));
    if (m == 0.0) return 0.0;
    auto f = [&](double s) { return modular_spans(nf, spans, k, 1.0 / s); };
    double lo, hi;
    if (f(m) > 1.0) {
        lo = m;
        hi = m;
        do {
            hi *= 2.0;
        } while (f(hi) > 1.0 && hi < 1e300);
    } else {
        hi = m;
        lo = m;
        do {
            lo *= 0.5;
        } while (f(lo) <= 1.0 && lo > 1e-300);
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 1.0) lo = mid; else hi = mid;
        if (hi - lo <= 1e-13 * hi) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double modular(const NFunction& nf, const GridFunction& u) {
    Span s{u.data(), u.size(), u.grid.weight()};
    return modular_spans(nf, &s, 1);
}

double modular_image(const NFunction& nf, const Grid& g, const LapImage& img) {
    Span s[2] = {{img.interior.data(), img.interior.size(), interior_weight(g)},
                 {img.boundary.data(), img.boundary.size(), boundary_weight(g)}};
    return modular_spans(nf, s, 2);
}

double luxemburg_norm(const NFunction& nf, const GridFunction& u) {
    Span s{u.data(), u.size(), u.grid.weight()};
    return luxemburg_spans(nf, &s, 1);
}

double luxemburg_image(const NFunction& nf, const Grid& g, const LapImage& img) {
    Span s[2] = {{img.interior.data(), img.interior.size(), interior_weight(g)},
                 {img.boundary.data(), img.boundary.size(), boundary_weight(g)}};
    return luxemburg_spans(nf, s, 2);
}

double norm_2G(const NFunction& nf, const GridFunction& u) {
    return luxemburg_image(nf, u.grid, lap_image(u));
}

double wnorm2(const Grid& g, const double* v, std::size_t n) {
    return std::sqrt(g.weight() * kern::dot(v, v, n));
}

} // namespace obh
