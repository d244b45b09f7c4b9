#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace hkcp {

// Deterministic random source. mt19937_64 output is pinned by the standard;
// the Gaussian transform is done by hand because std::normal_distribution is
// free to vary between standard libraries, and report bodies must reproduce
// byte for byte from a seed.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Integer in [0, bound).
    int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_gaussian() {
        constexpr double inv_sqrt2 = 0.7071067811865475244;
        const double re = gaussian() * inv_sqrt2;
        const double im = gaussian() * inv_sqrt2;
        return {re, im};
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a over a byte view; used to derive per-check sub-seeds and to digest
/// sample points for report records.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace hkcp
