#ifndef HETNET_RNG_HPP
#define HETNET_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

// Pinned random number generation. Monte-Carlo results must be bit-identical
// for a given seed on every build, so we avoid std::normal_distribution
// (implementation-defined) and use xoshiro256++ with an explicit Box-Muller
// transform. Seeds for sub-streams (per frame, per supersymbol, per link) are
// derived with splitmix64 so streams never overlap by construction.

namespace hetnet {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Hash a (master seed, path...) tuple into a fresh sub-stream seed.
// Mixing each path element through splitmix64 keeps distinct paths distinct.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    for (std::uint64_t p : path) {
        s = h ^ (p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
        h = splitmix64(s);
    }
    return h;
}

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        // Seed expansion per the xoshiro authors' recommendation.
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0,1]: 53-bit mantissa, never exactly 0 (safe for log()).
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second variate cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Circularly-symmetric complex normal, unit variance: E|z|^2 = 1.
    std::complex<double> cgaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        // Box-Muller pair scaled by 1/sqrt(2) => variance 1/2 per component.
        const double r = std::sqrt(-std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    // Uniform bit (for payload generation).
    int bit() { return static_cast<int>(next() >> 63); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace hetnet

#endif
