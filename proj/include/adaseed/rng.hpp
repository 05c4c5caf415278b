#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace adaseed {

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard; every distribution transform is written out here instead of
// using std::*_distribution, whose output is implementation defined. This is
// what makes CSV outputs byte-identical across toolchains and worker counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, bound), bound > 0. Rejection on the biased tail.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t x = next_u64();
            if (x < limit) return x % bound;
        }
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller, cosine branch only so the stream stays position independent.
    double normal(double mean, double sigma) {
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        return mean + sigma * r * std::cos(2.0 * M_PI * u2);
    }

    // Unit-scale gamma, Marsaglia-Tsang for shape >= 1, boosting below.
    double gamma(double shape) {
        if (shape <= 0.0) throw std::invalid_argument("Rng::gamma: shape must be positive");
        if (shape < 1.0) {
            double u = 1.0 - uniform01();  // (0, 1]
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal(0.0, 1.0);
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        double x = gamma(a);
        double y = gamma(b);
        return x / (x + y);
    }

    // Density proportional to x^-exponent on [xmin, inf), exponent > 1.
    double pareto(double xmin, double exponent) {
        if (xmin <= 0.0 || exponent <= 1.0)
            throw std::invalid_argument("Rng::pareto: need xmin > 0 and exponent > 1");
        double u = 1.0 - uniform01();  // (0, 1]
        return xmin * std::pow(u, -1.0 / (exponent - 1.0));
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 step; used to derive independent stream seeds from a base seed
// and a position, so results never depend on evaluation order.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

}  // namespace adaseed
