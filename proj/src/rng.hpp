#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dstbc {

/// Deterministic random stream. Streams are derived from a master seed and a
/// path of indices (point, trial, relay, ...) via splitmix64 so that any
/// stream can be reconstructed independently of scheduling order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = splitmix64(seed);
        for (std::uint64_t p : path) s = splitmix64(s ^ (p + 0x9e3779b97f4a7c15ULL));
        return s;
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); n must be >= 1.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Standard normal via Box-Muller (pinned algorithm, reproducible per seed).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly-symmetric complex Gaussian CN(0, 1).
    std::complex<double> cgaussian_unit() {
        const double re = gaussian(), im = gaussian();
        return {re * 0.70710678118654752440, im * 0.70710678118654752440};
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dstbc
