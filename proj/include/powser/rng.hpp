#ifndef POWSER_RNG_HPP
#define POWSER_RNG_HPP

// Counter-based random number kernel.
//
// Every random quantity in this library is a pure function of
// (seed, counter index): word(seed, i) applies the splitmix64 finalizer to
// seed + (i+1)*GOLDEN. Standard normals come from a Box-Muller transform of
// two such words. This gives random access (no sequential state), so trials
// and streams can be generated in any order on any number of threads with
// bit-identical results.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace powser {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/// i-th 64-bit word of the stream identified by `seed`.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * kGolden);
}

/// Seed for trial `index` of an experiment with the given master seed.
/// Decorrelated from counter_word by a distinct xor constant.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64((master_seed ^ 0xD1B54A32D192ED03ull) + (index + 1) * kGolden);
}

/// Map a word to (0, 1]; safe as a log() argument.
inline double unit_open(std::uint64_t w) {
    return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

/// Map a word to [0, 1).
inline double unit_half_open(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

/// Indexed standard normals. Pair i consumes counter words 2i and 2i+1:
///   u1 in (0,1], u2 in [0,1),  r = sqrt(-2 ln u1),
///   z0 = r cos(2 pi u2),  z1 = r sin(2 pi u2).
class NormalKernel {
public:
    explicit NormalKernel(std::uint64_t seed) : seed_(seed) {}

    void pair(std::uint64_t i, double& z0, double& z1) const {
        const double u1 = unit_open(counter_word(seed_, 2 * i));
        const double u2 = unit_half_open(counter_word(seed_, 2 * i + 1));
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(a);
        z1 = r * std::sin(a);
    }

    double at(std::uint64_t i) const {
        double z0, z1;
        pair(i, z0, z1);
        return z0;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

/// Sequential view over a NormalKernel that uses both halves of each
/// Box-Muller pair. Order of next() calls is the only state.
class NormalSequence {
public:
    explicit NormalSequence(std::uint64_t seed) : kernel_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double z0;
        kernel_.pair(index_++, z0, spare_);
        have_spare_ = true;
        return z0;
    }

private:
    NormalKernel kernel_;
    std::uint64_t index_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace powser

#endif // POWSER_RNG_HPP
