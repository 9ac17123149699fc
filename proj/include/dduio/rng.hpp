#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dduio {

// Seedable RNG with draws that are bit-reproducible across platforms: the
// mt19937_64 engine is fully specified by the standard, and the mappings to
// doubles below avoid std::*_distribution (whose output is
// implementation-defined). Passed by reference where a stream is consumed,
// by value where a private stream is wanted.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // uniform on [0, 1)
    double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller (pairs cached)
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * u2);
        has_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    // fair +1/-1 draw
    double sign() { return (bits() & 1u) ? 1.0 : -1.0; }

    std::uint64_t integer(std::uint64_t bound)  // uniform in [0, bound)
    {
        return bound == 0 ? 0 : bits() % bound;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dduio
