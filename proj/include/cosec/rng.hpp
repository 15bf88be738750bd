#ifndef COSEC_RNG_HPP
#define COSEC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cosec {

/// Seedable deterministic random stream. The engine (mt19937_64) and every
/// derived sample are fully specified, so runs reproduce bit-exactly across
/// platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bias-free by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Normal with mean 0 and the given standard deviation (Box-Muller,
    /// no cached spare so the stream layout is position-independent).
    double normal(double sigma) {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Derives an independent stream for a labeled sub-task (splitmix64 over
    /// the pair), keeping parallel cells decoupled from iteration order.
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (label + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cosec

#endif
