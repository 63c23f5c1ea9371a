#ifndef POWSER_BARRIER_HPP
#define POWSER_BARRIER_HPP

// Ballot-type barrier experiments on Gaussian random walks, and the barrier
// predicates evaluated on simulated walk increments.
//
// A BarrierSpec describes the walk S_j = G_1 + ... + G_j (independent
// centered Gaussians with per-step variances in [1/20, 20]) and constraints:
//   upper   S_j <= min(a, B j) + h(j)   (B optional, |h(j)| <= 10 log j)
//   lower   S_j >= g(j)                 (optional)
//   window  a - b < S_n <= a            (optional endpoint window)
// The simulators estimate the probability that all constraints hold.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "powser/errors.hpp"
#include "powser/euler_walk.hpp"
#include "powser/rng.hpp"

namespace powser {

struct BarrierSpec {
    int horizon = 0;                                    // n
    std::vector<double> variances;                      // per-step, size n
    std::vector<double> upper_shift;                    // h(j); empty = zero
    double upper_cap = 0.0;                             // a
    std::optional<double> upper_slope;                  // B: cap min(a, B j)
    std::optional<std::vector<double>> lower_bound;     // g(j), size n
    std::optional<double> endpoint_window;              // b: S_n in (a-b, a]

    /// Constant-variance walk below level a over n steps.
    static BarrierSpec flat(int n, double a, double variance) {
        BarrierSpec s;
        s.horizon = n;
        s.variances.assign(static_cast<std::size_t>(n), variance);
        s.upper_cap = a;
        return s;
    }

    void validate() const {
        if (horizon < 1) throw SpecError("BarrierSpec: horizon must be >= 1");
        if (variances.size() != static_cast<std::size_t>(horizon))
            throw SpecError("BarrierSpec: need one variance per step");
        for (double v : variances)
            if (!(v >= 1.0 / 20.0 && v <= 20.0))
                throw SpecError("BarrierSpec: step variance " + std::to_string(v) +
                                " outside [1/20, 20]");
        if (!upper_shift.empty()) {
            if (upper_shift.size() != static_cast<std::size_t>(horizon))
                throw SpecError("BarrierSpec: upper_shift must cover every step");
            for (int j = 1; j <= horizon; ++j) {
                const double lim = 10.0 * std::log(static_cast<double>(j)) + 1e-12;
                if (std::fabs(upper_shift[static_cast<std::size_t>(j - 1)]) > lim)
                    throw SpecError("BarrierSpec: |h(" + std::to_string(j) +
                                    ")| exceeds 10 log j");
            }
        }
        if (lower_bound && lower_bound->size() != static_cast<std::size_t>(horizon))
            throw SpecError("BarrierSpec: lower_bound must cover every step");
        if (endpoint_window && !(*endpoint_window > 0.0))
            throw SpecError("BarrierSpec: endpoint window width must be positive");
    }

    /// Stable 64-bit digest of all fields (identifies the experiment).
    std::uint64_t digest() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        auto mixd = [&h](double v) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            h = (h ^ bits) * 0x100000001b3ull;
        };
        mixd(static_cast<double>(horizon));
        for (double v : variances) mixd(v);
        for (double v : upper_shift) mixd(v);
        mixd(upper_cap);
        mixd(upper_slope ? *upper_slope : std::nan(""));
        if (lower_bound)
            for (double v : *lower_bound) mixd(v);
        mixd(endpoint_window ? *endpoint_window : std::nan(""));
        return h;
    }
};

/// Monte Carlo probability with the binomial standard error
/// sqrt(p(1-p)/trials).
struct BallotEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t spec_digest = 0;
};

namespace detail {

inline BallotEstimate from_counts(std::size_t hits, std::size_t trials, std::uint64_t digest) {
    BallotEstimate e;
    e.trials = trials;
    e.spec_digest = digest;
    e.probability = static_cast<double>(hits) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.probability * (1.0 - e.probability) / static_cast<double>(trials));
    return e;
}

/// One walk realization against the spec's constraints.
inline bool barrier_trial(const BarrierSpec& spec, std::uint64_t trial_seed) {
    NormalSequence gen(trial_seed);
    double s = 0.0;
    for (int j = 1; j <= spec.horizon; ++j) {
        s += gen.next() * std::sqrt(spec.variances[static_cast<std::size_t>(j - 1)]);
        double upper = spec.upper_cap;
        if (spec.upper_slope) upper = std::min(upper, *spec.upper_slope * j);
        if (!spec.upper_shift.empty()) upper += spec.upper_shift[static_cast<std::size_t>(j - 1)];
        if (s > upper) return false;
        if (spec.lower_bound && s < (*spec.lower_bound)[static_cast<std::size_t>(j - 1)])
            return false;
    }
    if (spec.endpoint_window) {
        if (!(s > spec.upper_cap - *spec.endpoint_window && s <= spec.upper_cap)) return false;
    }
    return true;
}

inline BallotEstimate simulate_barrier(const BarrierSpec& spec, std::size_t trials,
                                       std::uint64_t seed) {
    spec.validate();
    if (trials == 0) throw SpecError("barrier simulation: trials must be >= 1");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < trials; ++i)
        if (barrier_trial(spec, derive_seed(seed, i))) ++hits;
    return from_counts(hits, trials, spec.digest());
}

} // namespace detail

/// P[S_j <= a + h(j) for all j <= n].
inline BallotEstimate simulate_ballot(const BarrierSpec& spec, std::size_t trials,
                                      std::uint64_t seed) {
    return detail::simulate_barrier(spec, trials, seed);
}

/// P[g(j) <= S_j <= min(a, B j) + h(j) for all j <= n]; requires the lower bound.
inline BallotEstimate simulate_two_sided(const BarrierSpec& spec, std::size_t trials,
                                         std::uint64_t seed) {
    if (!spec.lower_bound)
        throw SpecError("simulate_two_sided: spec has no lower bound");
    return detail::simulate_barrier(spec, trials, seed);
}

/// P[barrier for all j, and S_n in (a-b, a]]; requires the endpoint window.
inline BallotEstimate simulate_endpoint_window(const BarrierSpec& spec, std::size_t trials,
                                               std::uint64_t seed) {
    if (!spec.endpoint_window)
        throw SpecError("simulate_endpoint_window: spec has no endpoint window");
    return detail::simulate_barrier(spec, trials, seed);
}

/// Left tail of the maximum of n equicorrelated standard Gaussians
/// (E[G_i G_j] = correlation, realized through a shared factor):
/// P[max_i G_i <= sqrt((2 - delta) log n)], or a caller-supplied threshold.
struct MaxGaussSpec {
    std::size_t count = 0;                    // n >= 2
    double correlation = 0.0;                 // epsilon >= 0
    double delta = 0.0;                       // in (0, 2)
    std::optional<double> threshold_override; // replaces sqrt((2-delta) log n)

    double threshold() const {
        if (threshold_override) return *threshold_override;
        return std::sqrt((2.0 - delta) * std::log(static_cast<double>(count)));
    }
};

inline BallotEstimate simulate_max_correlated(const MaxGaussSpec& spec, std::size_t trials,
                                              std::uint64_t seed) {
    if (spec.count < 2) throw SpecError("simulate_max_correlated: need n >= 2");
    if (!(spec.delta > 0.0 && spec.delta < 2.0) && !spec.threshold_override)
        throw SpecError("simulate_max_correlated: delta must lie in (0, 2)");
    if (!(spec.correlation >= 0.0 && spec.correlation < 1.0))
        throw SpecError("simulate_max_correlated: correlation must lie in [0, 1)");
    if (trials == 0) throw SpecError("simulate_max_correlated: trials must be >= 1");

    const double threshold = spec.threshold();
    const double shared_w = std::sqrt(spec.correlation);
    const double own_w = std::sqrt(1.0 - spec.correlation);
    std::size_t hits = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        NormalSequence gen(derive_seed(seed, trial));
        const double shared = (spec.correlation > 0.0) ? gen.next() : 0.0;
        bool below = true;
        for (std::size_t i = 0; i < spec.count; ++i) {
            const double g = shared_w * shared + own_w * gen.next();
            if (g > threshold) {
                below = false;
                break;
            }
        }
        if (below) ++hits;
    }
    BallotEstimate e = detail::from_counts(hits, trials, 0);
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mixd = [&h](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h = (h ^ bits) * 0x100000001b3ull;
    };
    mixd(static_cast<double>(spec.count));
    mixd(spec.correlation);
    mixd(spec.delta);
    mixd(threshold);
    e.spec_digest = h;
    return e;
}

// ---------------------------------------------------------------------------
// Barrier predicates on walk increments.
// ---------------------------------------------------------------------------

/// Corridor event on a shifted walk: for all j <= M,
///   -C j <= sum_{m<=j} (Z(m) - 2 sigma_m^2) <= C - 3 log j.
inline bool corridor_event(const WalkIncrements& walk, double C, int M) {
    if (M < 1 || M > walk.length())
        throw InputError("corridor_event: M = " + std::to_string(M) +
                         " exceeds walk length " + std::to_string(walk.length()));
    double s = 0.0;
    for (int j = 1; j <= M; ++j) {
        s += walk.values[static_cast<std::size_t>(j - 1)] -
             2.0 * walk.variances[static_cast<std::size_t>(j - 1)];
        if (s < -C * j) return false;
        if (s > C - 3.0 * std::log(static_cast<double>(j))) return false;
    }
    return true;
}

namespace detail {
inline void check_unshifted_walk(const WalkIncrements& walk, double N, double K, int logK,
                                 const char* who) {
    if (walk.shift != 0) throw InputError(std::string(who) + ": walk must be unshifted");
    if (walk.sigma != 0.0) throw InputError(std::string(who) + ": walk must have sigma = 0");
    if (std::fabs(std::log(K) - logK) > 1e-9)
        throw InputError(std::string(who) + ": log K must be an integer");
    if (logK < 1 || logK > walk.length())
        throw InputError(std::string(who) + ": walk shorter than log K blocks");
    if (!(N > std::exp(1.0)))
        throw InputError(std::string(who) + ": need N > e for log log N");
}
} // namespace detail

/// Cap event: sum_{m<=j} (Z(m) - 2 sigma_m^2) <= level * log log N for all
/// j <= log K. Paper default level = 12.
inline bool cap_event(const WalkIncrements& walk, double N, double K, double level = 12.0) {
    const int logK = static_cast<int>(std::llround(std::log(K)));
    detail::check_unshifted_walk(walk, N, K, logK, "cap_event");
    const double cap = level * std::log(std::log(N));
    double s = 0.0;
    for (int j = 1; j <= logK; ++j) {
        s += walk.values[static_cast<std::size_t>(j - 1)] -
             2.0 * walk.variances[static_cast<std::size_t>(j - 1)];
        if (s > cap) return false;
    }
    return true;
}

/// Strengthened event: the cap event, plus
///   sum_{m<=j} (Z(m) - 2 sigma_m^2) <= -dip_level * log log N
/// for start_fraction * log K <= j <= log K. Paper defaults 12 / 2000 / 0.01.
/// Implies cap_event by construction.
inline bool dip_event(const WalkIncrements& walk, double N, double K, double level = 12.0,
                      double dip_level = 2000.0, double start_fraction = 0.01) {
    if (!cap_event(walk, N, K, level)) return false;
    const int logK = static_cast<int>(std::llround(std::log(K)));
    const double dip = -dip_level * std::log(std::log(N));
    const int j_lo = std::max(1, static_cast<int>(std::ceil(start_fraction * logK - 1e-12)));
    double s = 0.0;
    for (int j = 1; j <= logK; ++j) {
        s += walk.values[static_cast<std::size_t>(j - 1)] -
             2.0 * walk.variances[static_cast<std::size_t>(j - 1)];
        if (j >= j_lo && s > dip) return false;
    }
    return true;
}

} // namespace powser

#endif // POWSER_BARRIER_HPP
