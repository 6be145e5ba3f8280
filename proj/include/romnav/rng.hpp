#ifndef ROMNAV_RNG_HPP
#define ROMNAV_RNG_HPP

#include <cmath>
#include <cstdint>

namespace romnav {

/// Seeded xorshift64* generator. All simulation randomness flows through this
/// so episodes reproduce bit-for-bit across platforms; no std:: distributions
/// are used anywhere because their output is implementation-defined.
///
/// Sequence definition (documented for cross-language replication):
///   state is initialized with one splitmix64 step of the seed,
///   next():   s ^= s >> 12; s ^= s << 25; s ^= s >> 27; return s * 0x2545F4914F6CDD1D
///   uniform:  (next() >> 11) * 2^-53, in [0, 1)
///   gaussian: Box-Muller cosine branch from exactly two uniforms,
///             sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 step; keeps the xorshift state nonzero even for seed 0
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        state_ = z ^ (z >> 31);
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal draw; consumes exactly two raw values.
    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace romnav

#endif
