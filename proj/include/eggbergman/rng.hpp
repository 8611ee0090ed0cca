#ifndef EGGBERGMAN_RNG_HPP
#define EGGBERGMAN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace eggb {

/// 64-bit avalanche (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Counter-based per-sample stream: the whole sequence is a pure function of
/// (seed, index), so sample i is identical no matter how work is partitioned
/// across threads.
class SampleRng {
  public:
    SampleRng(std::uint64_t seed, std::uint64_t index)
        : state_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                       (index + 0xd1b54a32d192ed03ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Box-Muller pair of standard normals.
    void normal_pair(double& g0, double& g1) {
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925286766559 * u2;
        g0 = r * std::cos(t);
        g1 = r * std::sin(t);
    }

  private:
    std::uint64_t state_;
};

} // namespace eggb

#endif
