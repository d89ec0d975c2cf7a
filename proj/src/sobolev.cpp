// Sobolev-conjugate inverses: cumulative integrals of G^{-1}(s) s^{-1-1/n}
// with a power substitution that removes the integrable singularity at zero.
#include "obh/nfunction.hpp"
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace obh {
namespace {

struct LogLogInterp {
    std::vector<double> lx, ly;
    double eval(double s) const {
        double x = std::log(s);
        std::size_t k;
        if (x <= lx.front()) k = 0;
        else if (x >= lx.back()) k = lx.size() - 2;
        else k = std::upper_bound(lx.begin(), lx.end(), x) - lx.begin() - 1;
        double t = (x - lx[k]) / (lx[k + 1] - lx[k]);
        return std::exp(ly[k] + t * (ly[k + 1] - ly[k]));
    }
};

struct Cumulative {
    std::vector<double> t, I; // even-node cumulative values, t increasing
};

// integral_0^{t_max} f(s) s^{-1-1/n} ds via s = tau^m, composite Simpson.
Cumulative cum_integral(const std::function<double(double)>& f, int n, double t_max,
                        int panels) {
    auto w = [&](double s) { return f(s) * std::pow(s, -1.0 - 1.0 / n); };
    const double s0 = 1e-10;
    double alpha = std::log2(w(2.0 * s0) / w(s0));
    if (!(alpha > -1.0 + 1e-9)) throw std::runtime_error("subcritical condition fails");
    int m = (int)std::min(64.0, std::ceil(2.0 / (alpha + 1.0)) + 2.0);
    double tau_max = std::pow(t_max, 1.0 / m);
    double ht = tau_max / panels;
    auto integrand = [&](double tau) {
        if (tau <= 0.0) return 0.0;
        double s = std::pow(tau, m);
        if (s < 1e-280) return 0.0; // below underflow: integrand vanishes there
        return w(s) * m * std::pow(tau, m - 1);
    };
    Cumulative out;
    out.t.reserve(panels / 2);
    out.I.reserve(panels / 2);
    double acc = 0.0;
    double y0 = integrand(0.0);
    for (int j = 2; j <= panels; j += 2) {
        double y1 = integrand((j - 1) * ht);
        double y2 = integrand(j * ht);
        acc += (ht / 3.0) * (y0 + 4.0 * y1 + y2);
        y0 = y2;
        out.t.push_back(std::pow(j * ht, m));
        out.I.push_back(acc);
    }
    return out;
}

LogLogInterp to_interp(const Cumulative& c) {
    LogLogInterp li;
    li.lx.reserve(c.t.size());
    li.ly.reserve(c.t.size());
    for (std::size_t k = 0; k < c.t.size(); ++k) {
        if (c.t[k] <= 0.0 || c.I[k] <= 0.0) continue;
        li.lx.push_back(std::log(c.t[k]));
        li.ly.push_back(std::log(c.I[k]));
    }
    if (li.lx.size() < 2) throw std::runtime_error("subcritical condition fails");
    return li;
}

} // namespace

double sobolev_conjugate_inverse(const NFunction& nf, int n, double t, int order) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("argument must be positive");
    if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
    auto ginv = [&](double s) { return inverse_G(nf, s); };
    if (order == 1) {
        Cumulative c = cum_integral(ginv, n, t, 8192);
        return c.I.back();
    }
    Cumulative inner = cum_integral(ginv, n, t, 16384);
    LogLogInterp f1 = to_interp(inner);
    Cumulative outer = cum_integral([&](double s) { return f1.eval(s); }, n, t, 8192);
    return outer.I.back();
}

} // namespace obh
