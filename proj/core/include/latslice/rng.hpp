#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace latslice {

// Deterministic random stream. All randomized operations take one of these
// explicitly so that results are reproducible bit-for-bit given a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed), seed_hash_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; implementation pinned here (not the
    // standard library's distribution) so streams are stable across toolchains.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling, bias-free.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % n;
    }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Derived stream for parallel work items.
    Rng child(std::uint64_t index) const {
        std::mt19937_64 mix(seed_hash_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        return Rng(mix());
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t seed_hash_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace latslice
