#ifndef DELTARAD_RNG_HPP
#define DELTARAD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "deltarad/core.hpp"

namespace deltarad {

// Counter-based generator: draw i of stream (seed, key) is a pure function
// of (seed, key, i), so adding streams never reshuffles existing ones and
// parallel consumers stay reproducible.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t key = 0) : state_(mix(seed ^ mix(key))) {}
    CounterRng(std::uint64_t seed, const std::string& key) : CounterRng(seed, fnv1a64(key)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // 64-bit multiply-shift; bias is negligible for the small n used here
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double next_normal() {
        // Box-Muller, one value per pair of uniforms
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Skew-normal via the delta construction: shape alpha maps monotonically
    // to sample skewness, which is what the phantom drift relies on.
    double next_skew_normal(double loc, double scale, double alpha) {
        const double delta = alpha / std::sqrt(1.0 + alpha * alpha);
        const double z0 = next_normal();
        const double z1 = next_normal();
        const double y = delta * std::abs(z0) + std::sqrt(1.0 - delta * delta) * z1;
        return loc + scale * y;
    }

    double next_exponential(double rate) {
        double u = next_double();
        while (u <= 0.0) u = next_double();
        return -std::log(u) / rate;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace deltarad

#endif
