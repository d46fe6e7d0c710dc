#pragma once

// Seeded random inputs for property tests.

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double angle() { return uniform(-std::numbers::pi, std::numbers::pi); }

    std::complex<double> point(double radius = 10.0) { return {uniform(-radius, radius), uniform(-radius, radius)}; }

    /// Convex polygon chain: a regular N-gon with jittered radii and angles.
    std::vector<std::complex<double>> convex_chain(int sides, double jitter = 0.1)
    {
        std::vector<std::complex<double>> v;
        const double step = 2.0 * std::numbers::pi / sides;
        for (int n = 0; n < sides; ++n) {
            v.push_back(std::polar(1.0 + uniform(-jitter, jitter), n * step + uniform(-jitter, jitter) * step));
        }
        return v;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace testgen
