#pragma once
// Seed-stable gaussian stream (Box-Muller over mt19937_64 uniforms).
// std::normal_distribution output is implementation-defined, which would
// break byte-reproducible runs across toolchains, so we roll the transform.
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace obh {

struct GaussianStream {
    std::mt19937_64 eng;
    bool have_spare = false;
    double spare = 0.0;

    explicit GaussianStream(std::uint64_t seed) : eng(seed) {}

    double uniform() { return double(eng() >> 11) * 0x1.0p-53; } // [0,1)

    double next() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1;
        do { u1 = uniform(); } while (u1 <= 1e-300);
        double u2 = uniform();
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * std::numbers::pi_v<double> * u2;
        spare = rad * std::sin(ang);
        have_spare = true;
        return rad * std::cos(ang);
    }

    std::vector<double> take(std::size_t n) {
        std::vector<double> v(n);
        for (auto& x : v) x = next();
        return v;
    }
};

} // namespace obh
