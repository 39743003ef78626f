#pragma once
// Seeded, replayable randomness.  Every randomized routine in the library and
// CLI draws from this engine so a (config, seed) pair replays exactly.

#include <complex>
#include <cstdint>
#include <random>

namespace lmoment {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(eng);
    }

    uint64_t uniform_int(uint64_t lo, uint64_t hi) {  // inclusive range
        std::uniform_int_distribution<uint64_t> d(lo, hi);
        return d(eng);
    }

    std::complex<double> complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }

    auto& engine() { return eng; }
};

}  // namespace lmoment
