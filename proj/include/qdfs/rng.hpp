#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qdfs {

// splitmix64, used to derive well-separated seeds for parallel streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. Gaussians come from our own Box-Muller on raw
// mt19937_64 output so results do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
        std::uint64_t b = splitmix64(s);
        eng_.seed(a ^ (b << 1));
    }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in (0, 1]; never returns 0 so log() below is safe.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(eng_() >> 11) * 0x1p-53);
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform01();
        double v = uniform01();
        double r = std::sqrt(-2.0 * std::log(u));
        double c = std::cos(6.283185307179586476925286766559 * v);
        double sn = std::sin(6.283185307179586476925286766559 * v);
        spare_ = r * sn;
        have_spare_ = true;
        return r * c;
    }

    std::complex<double> complex_gaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0;
    bool have_spare_ = false;
};

} // namespace qdfs
