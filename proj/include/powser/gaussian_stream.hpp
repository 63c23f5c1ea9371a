#ifndef POWSER_GAUSSIAN_STREAM_HPP
#define POWSER_GAUSSIAN_STREAM_HPP

// The driving noise: a reproducibly seeded sequence X(1), X(2), ... of
// independent standard complex Gaussians (Re and Im independent N(0, 1/2),
// so E|X(k)|^2 = 1). X(k) is produced from Box-Muller pair k-1 of the
// counter kernel, so regenerating with the same seed and count is
// bit-identical, and a longer stream extends a shorter one.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "powser/errors.hpp"
#include "powser/rng.hpp"

namespace powser {

class GaussianStream {
public:
    /// Draw `count` standard complex Gaussians. count = 0 is refused.
    static GaussianStream sample(std::uint64_t master_seed, std::size_t count) {
        if (count == 0) throw InputError("GaussianStream: empty stream requested (count = 0)");
        GaussianStream s;
        s.master_seed_ = master_seed;
        s.values_.resize(count);
        const NormalKernel kernel(master_seed);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t k = 0; k < count; ++k) {
            double z0, z1;
            kernel.pair(k, z0, z1);
            s.values_[k] = {z0 * inv_sqrt2, z1 * inv_sqrt2};
        }
        return s;
    }

    /// Deterministic injection for tests: X(k) = values[k-1] as given.
    static GaussianStream inject(std::vector<std::complex<double>> values) {
        GaussianStream s;
        s.injected_ = true;
        s.values_ = std::move(values);
        return s;
    }

    /// X(k), 1-based. Out-of-range access is an input error (stream too short).
    std::complex<double> x(std::size_t k) const {
        if (k == 0 || k > values_.size())
            throw InputError("GaussianStream: index " + std::to_string(k) +
                             " outside stream of length " + std::to_string(values_.size()));
        return values_[k - 1];
    }

    std::size_t count() const { return values_.size(); }
    std::uint64_t master_seed() const { return master_seed_; }
    bool injected() const { return injected_; }
    const std::vector<std::complex<double>>& values() const { return values_; }

    void require_length(std::size_t n, const char* who) const {
        if (values_.size() < n)
            throw InputError(std::string(who) + ": stream of length " +
                             std::to_string(values_.size()) + " is shorter than required " +
                             std::to_string(n));
    }

private:
    GaussianStream() = default;
    std::uint64_t master_seed_ = 0;
    bool injected_ = false;
    std::vector<std::complex<double>> values_;
};

} // namespace powser

#endif // POWSER_GAUSSIAN_STREAM_HPP
