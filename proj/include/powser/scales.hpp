#ifndef POWSER_SCALES_HPP
#define POWSER_SCALES_HPP

// Index bookkeeping shared by the coefficient and walk machinery.
//
// Tie rule: a real cutoff c admits integer k <= floor(c + 1e-12), so block
// edges computed as e^m in double precision resolve the same way on every
// platform. Block m covers e^{m-1} < k <= e^m, with k = 1 folded into the
// first block.

#include <cmath>
#include <string>

#include "powser/errors.hpp"

namespace powser {

/// Largest integer k admitted by the real cutoff c ("k <= c").
inline long long parts_cap(double c) {
    if (c < 1.0) return 0;
    return static_cast<long long>(std::floor(c + 1e-12));
}

struct BlockBounds {
    long long lo; // first k of the block
    long long hi; // last k of the block, inclusive
    bool empty() const { return lo > hi; }
};

/// Integer range of block m >= 1: (e^{m-1}, e^m], with k = 1 included when m = 1.
inline BlockBounds block_bounds(int m) {
    if (m < 1) throw InputError("block_bounds: block index must be >= 1");
    const long long hi = parts_cap(std::exp(static_cast<double>(m)));
    const long long lo = (m == 1) ? 1 : parts_cap(std::exp(static_cast<double>(m - 1))) + 1;
    return {lo, hi};
}

/// Integer window [8N/7, 4N/3] scanned by the coefficient experiments.
struct CoeffRange {
    int lo;
    int hi;
};

inline CoeffRange coeff_range(int N) {
    return {static_cast<int>(std::ceil(8.0 * N / 7.0 - 1e-9)),
            static_cast<int>(std::floor(4.0 * N / 3.0 + 1e-9))};
}

/// The scale parameters of one experiment: outer scale N, smoothness cutoff K
/// (log K integer), shift budget W + C, smoothing sigma, and the derived
/// effective scale N_sigma and walk length M.
struct ModelScale {
    double N = 0.0;
    double K = 0.0;
    double W = 0.0;
    double C = 0.0;
    double sigma = 0.0;

    ModelScale(double N_, double K_, double W_, double C_, double sigma_ = 0.0)
        : N(N_), K(K_), W(W_), C(C_), sigma(sigma_) {
        if (N < 1.0) throw SpecError("ModelScale: N must be >= 1");
        if (sigma < 0.0) throw SpecError("ModelScale: sigma must be >= 0");
        const double logK = std::log(K);
        if (std::fabs(logK - std::round(logK)) > 1e-9)
            throw SpecError("ModelScale: log K must be an integer, got log K = " +
                            std::to_string(logK));
        const double wc = W + C;
        if (std::fabs(wc - std::round(wc)) > 1e-9)
            throw SpecError("ModelScale: W + C must be an integer, got " + std::to_string(wc));
    }

    /// floor(log min(N, 1/sigma)); sigma = 0 reads 1/sigma as +infinity.
    int log_n_sigma() const {
        const double bound = (sigma > 0.0) ? std::min(N, 1.0 / sigma) : N;
        return static_cast<int>(std::floor(std::log(bound) + 1e-12));
    }

    double n_sigma() const { return std::exp(static_cast<double>(log_n_sigma())); }

    int shift() const { return static_cast<int>(std::llround(W + C)); }

    /// M = log N_sigma - W - C; must be a nonnegative integer when used.
    int walk_length() const {
        const int m = log_n_sigma() - shift();
        if (m < 0)
            throw SpecError("ModelScale: walk length log N_sigma - W - C = " +
                            std::to_string(m) + " is negative");
        return m;
    }
};

} // namespace powser

#endif // POWSER_SCALES_HPP
