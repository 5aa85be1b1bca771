#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tissuefit {

// Deterministic RNG built on mt19937_64 with fixed output transforms, so the
// same seed reproduces the same stream on any platform/standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {  // Box-Muller, one value per pair kept for simplicity
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t integer(std::uint64_t n) {  // [0, n)
        return eng_() % n;  // modulo bias irrelevant at these ranges
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace tissuefit
