#pragma once

#include <cmath>
#include <cstdint>

namespace csb {

// Counter-based generator: value = mix(seed, stream, counter). Each work unit
// (observation, bootstrap replicate, Monte Carlo draw) owns a stream, so
// parallel evaluation order never changes the numbers drawn.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(seed ^ mix64(stream * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // uniform in (0,1); never returns 0 or 1 exactly
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // 128-bit multiply avoids modulo bias for the n used here
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

    double gumbel() { return -std::log(-std::log(uniform())); }

    double normal() {
        // Box-Muller, one value per call (second discarded, determinism first)
        double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    std::uint64_t state_;
};

}  // namespace csb
