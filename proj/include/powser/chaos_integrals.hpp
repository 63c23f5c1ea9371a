#ifndef POWSER_CHAOS_INTEGRALS_HPP
#define POWSER_CHAOS_INTEGRALS_HPP

// Integral and sum identities on realizations: Parseval mass of the truncated
// coefficient polynomial, the pointwise-exp circle mass of F_N with its
// threshold event, the rough/smooth coefficient decomposition, and the
// variance / covariance sums over the window [8N/7, 4N/3].
//
// Parseval runs on the truncated polynomial where uniform quadrature is exact
// (Q > 2D enforced); the circle mass evaluates exp pointwise with an adaptive
// node count. The two paths are independent and cross-checked in tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powser/angles.hpp"
#include "powser/coefficients.hpp"
#include "powser/errors.hpp"
#include "powser/gaussian_stream.hpp"
#include "powser/mc_engine.hpp"
#include "powser/scales.hpp"

namespace powser {

/// Uniform nodes t_q = 2 pi q / points + offset on the circle of the given
/// radius; weights 2 pi / points.
struct QuadratureRule {
    int points = 0;
    double radius = 1.0;
    double offset = 0.0;

    double node(int q) const { return kTwoPi * q / points + offset; }

    void validate() const {
        if (points < 1) throw SpecError("QuadratureRule: points must be >= 1");
        if (!(radius > 0.0 && radius <= 1.0))
            throw SpecError("QuadratureRule: radius must lie in (0, 1]");
    }
};

struct ParsevalResult {
    double integral;        // (1/2pi) integral |P(r e^{it})|^2 dt by quadrature
    double coefficient_sum; // sum_k r^{2k} |c(k)|^2
};

/// Both sides of Parseval's identity for the truncated polynomial
/// P(z) = sum_{k<=D} c(k) z^k. Exact quadrature requires Q > 2D.
inline ParsevalResult parseval_mass(const CoefficientSeries& series, const QuadratureRule& rule) {
    rule.validate();
    const int degree = series.degree();
    if (rule.points <= 2 * degree)
        throw SpecError("parseval_mass: points = " + std::to_string(rule.points) +
                        " violates exactness (need > 2 * degree = " +
                        std::to_string(2 * degree) + ")");
    const double r = rule.radius;

    double integral = 0.0;
    for (int q = 0; q < rule.points; ++q) {
        const double t = rule.node(q);
        const std::complex<double> z = r * std::complex<double>(std::cos(t), std::sin(t));
        // Horner evaluation of the truncated polynomial
        std::complex<double> p = series.c(degree);
        for (int k = degree - 1; k >= 0; --k) p = p * z + series.c(k);
        integral += std::norm(p);
    }
    integral /= static_cast<double>(rule.points);

    double csum = 0.0;
    double r2k = 1.0;
    for (int k = 0; k <= degree; ++k) {
        csum += r2k * std::norm(series.c(k));
        r2k *= r * r;
    }
    return {integral, csum};
}

struct MassResult {
    double value = 0.0;   // integral over [0, 2pi] (weight 2pi/Q included)
    int points_used = 0;  // final node count
    bool converged = true;
};

struct MassOptions {
    int initial_points = 0;   // 0 = auto (about 4N, power of two, >= 1024)
    int max_points = 1 << 17; // refinement cap; exceeding it flags the result
    double rel_tol = 0.01;    // doubling must change the value by less than this
    double offset = 0.0;      // node rotation
};

/// integral_0^{2pi} |F_N(e^{-sigma+it})|^2 dt by pointwise exp evaluation with
/// doubling node counts until the relative change drops below rel_tol.
inline MassResult low_moment_mass(const GaussianStream& stream, double N, double sigma,
                                  const MassOptions& opts = {}) {
    if (N < 1.0) throw SpecError("low_moment_mass: N must be >= 1");
    if (sigma < 0.0) throw SpecError("low_moment_mass: sigma must be >= 0");
    const long long kcap = parts_cap(N);
    stream.require_length(static_cast<std::size_t>(kcap), "low_moment_mass");
    const double radius = std::exp(-sigma);

    int q0 = opts.initial_points;
    if (q0 <= 0) {
        q0 = 1024;
        while (q0 < 4.0 * N && q0 < opts.max_points) q0 *= 2;
    }

    auto node_value = [&](double t) {
        const std::complex<double> logf = detail::log_euler_on_circle(stream, kcap, radius, t);
        if (2.0 * logf.real() > detail::kExpOverflowThreshold)
            throw OverflowError("low_moment_mass: exp overflow at t = " + std::to_string(t), t);
        return std::exp(2.0 * logf.real());
    };

    // node sum at Q; refined to 2Q by adding the odd nodes
    int q = q0;
    double node_sum = 0.0;
    for (int i = 0; i < q; ++i) node_sum += node_value(kTwoPi * i / q + opts.offset);
    double mass = node_sum * kTwoPi / q;

    MassResult result;
    result.converged = false;
    while (2 * q <= opts.max_points) {
        const int q2 = 2 * q;
        double odd_sum = 0.0;
        for (int i = 1; i < q2; i += 2) odd_sum += node_value(kTwoPi * i / q2 + opts.offset);
        const double mass2 = (node_sum + odd_sum) * kTwoPi / q2;
        const bool close = std::fabs(mass2 - mass) <= opts.rel_tol * std::fabs(mass2);
        node_sum += odd_sum;
        q = q2;
        mass = mass2;
        if (close) {
            result.converged = true;
            break;
        }
    }
    result.value = mass;
    result.points_used = q;
    return result;
}

struct MassFrequencyResult {
    BallotEstimate frequency;    // of {mass >= threshold}
    double threshold;            // e^{-21W/10} min(N, 1/sigma) / sqrt(log N)
    bool outside_stated_regime;  // W > (log N)^{1/3}
    std::vector<double> per_trial_mass;
};

/// Frequency of the mass-threshold event over fresh realizations. W < 1 is
/// refused; W above (log N)^{1/3} runs with the regime flag set.
inline MassFrequencyResult mass_threshold_frequency(double N, double sigma, double W,
                                                    std::size_t trials, std::uint64_t seed,
                                                    int workers = 0,
                                                    const MassOptions& opts = {}) {
    if (W < 1.0) throw SpecError("mass_threshold_frequency: W must be >= 1");
    if (N < 2.0) throw SpecError("mass_threshold_frequency: N must be >= 2");
    const double n_eff = (sigma > 0.0) ? std::min(N, 1.0 / sigma) : N;

    MassFrequencyResult result;
    result.threshold = std::exp(-2.1 * W) * n_eff / std::sqrt(std::log(N));
    result.outside_stated_regime = W > std::cbrt(std::log(N));

    const std::size_t count = static_cast<std::size_t>(parts_cap(N));
    TrialTable table =
        run_trials(trials, seed, workers, [&](std::uint64_t trial_seed, std::size_t) {
            const GaussianStream stream = GaussianStream::sample(trial_seed, count);
            return std::vector<double>{low_moment_mass(stream, N, sigma, opts).value};
        });
    result.frequency = reduce_frequency(table, 0, result.threshold);
    result.per_trial_mass.reserve(table.rows.size());
    for (const auto& row : table.rows)
        if (!row.empty()) result.per_trial_mass.push_back(row[0]);
    return result;
}

/// N-smooth part of the coefficient: the degree-n coefficient of F_N
/// (partition sum restricted to parts <= N), by recurrence with cap N.
inline std::complex<double> smooth_tail(const GaussianStream& stream, int n, double N) {
    if (n < 0) throw InputError("smooth_tail: n must be >= 0");
    return coeffs_by_recurrence(stream, n, N).c(n);
}

namespace detail {
inline void check_window_index(int n, int N, const char* who) {
    const CoeffRange r = coeff_range(N);
    if (n < r.lo || n > r.hi)
        throw SpecError(std::string(who) + ": n = " + std::to_string(n) +
                        " outside [8N/7, 4N/3] = [" + std::to_string(r.lo) + ", " +
                        std::to_string(r.hi) + "]");
}
} // namespace detail

/// sum_{N < k <= n} (1/k) |A(n-k)|^2 for n in [8N/7, 4N/3].
inline double variance_sum(const GaussianStream& stream, int n, int N) {
    detail::check_window_index(n, N, "variance_sum");
    const int degree = n - N - 1; // largest coefficient index appearing
    const CoefficientSeries series =
        coeffs_by_recurrence(stream, std::max(degree, 0), static_cast<double>(N));
    double acc = 0.0;
    for (int k = N + 1; k <= n; ++k) acc += std::norm(series.c(n - k)) / static_cast<double>(k);
    return acc;
}

/// One entry of the rough-part covariance kernel.
struct CovarianceRecord {
    int n = 0;
    int m = 0;
    int scale = 0; // N
    std::complex<double> value;
};

namespace detail {
inline std::complex<double> covariance_value(const CoefficientSeries& series, int n, int m,
                                             int N) {
    const int k_hi = static_cast<int>(std::floor(4.0 * N / 3.0 + 1e-9));
    if (n == m) {
        double acc = 0.0;
        for (int k = N + 1; k <= std::min(n, k_hi); ++k)
            acc += std::norm(series.c(n - k)) / static_cast<double>(k);
        return acc; // exactly real and nonnegative on the diagonal
    }
    std::complex<double> acc = 0.0;
    for (int k = N + 1; k <= k_hi; ++k) {
        if (n - k < 0 || m - k < 0) continue; // empty partition sums
        acc += series.c(n - k) * std::conj(series.c(m - k)) / static_cast<double>(k);
    }
    return acc;
}
} // namespace detail

/// sum_{N < k <= 4N/3} (1/k) A(n-k) conj(A(m-k)), empty sums for negative
/// indices; Hermitian in (n, m), real nonnegative on the diagonal.
inline CovarianceRecord covariance_pair(const GaussianStream& stream, int n, int m, int N) {
    detail::check_window_index(n, N, "covariance_pair");
    detail::check_window_index(m, N, "covariance_pair");
    const int degree = std::max(n, m) - N - 1;
    const CoefficientSeries series =
        coeffs_by_recurrence(stream, std::max(degree, 0), static_cast<double>(N));
    return {n, m, N, detail::covariance_value(series, n, m, N)};
}

struct CensusResult {
    int n_lo = 0, n_hi = 0;
    double threshold = 0.0;
    std::vector<int> counts; // |B_n| for n = n_lo..n_hi
    int max_count = 0;
};

/// For every n in [8N/7, 4N/3], count m in the same window with
/// |covariance(n, m)| >= threshold (default (log N)^{-4/5}).
inline CensusResult covariance_census(const GaussianStream& stream, int N,
                                      std::optional<double> threshold = {}) {
    const CoeffRange r = coeff_range(N);
    if (r.lo > r.hi)
        throw SpecError("covariance_census: window [8N/7, 4N/3] is empty for N = " +
                        std::to_string(N));
    CensusResult census;
    census.n_lo = r.lo;
    census.n_hi = r.hi;
    census.threshold =
        threshold ? *threshold : std::pow(std::log(static_cast<double>(N)), -0.8);

    const int degree = r.hi - N - 1;
    const CoefficientSeries series =
        coeffs_by_recurrence(stream, std::max(degree, 0), static_cast<double>(N));

    const int count = r.hi - r.lo + 1;
    census.counts.assign(static_cast<std::size_t>(count), 0);
    for (int n = r.lo; n <= r.hi; ++n) {
        for (int m = n; m <= r.hi; ++m) {
            const std::complex<double> v = detail::covariance_value(series, n, m, N);
            if (std::abs(v) >= census.threshold) {
                ++census.counts[static_cast<std::size_t>(n - r.lo)];
                if (m != n) ++census.counts[static_cast<std::size_t>(m - r.lo)];
            }
        }
    }
    for (int c : census.counts) census.max_count = std::max(census.max_count, c);
    return census;
}

struct VarianceFrequencyResult {
    BallotEstimate frequency;   // of {variance_sum >= threshold}
    double threshold;           // e^{-11W/5} / sqrt(log N)
    int n;                      // window index used
    bool outside_stated_regime; // W > (log N)^{1/3}
    std::vector<double> per_trial_value;
};

/// Frequency of {variance_sum(n, N) >= e^{-11W/5} / sqrt(log N)} over fresh
/// realizations. Same W policy as mass_threshold_frequency.
inline VarianceFrequencyResult variance_event_frequency(int N, double W, int n,
                                                        std::size_t trials, std::uint64_t seed,
                                                        int workers = 0) {
    if (W < 1.0) throw SpecError("variance_event_frequency: W must be >= 1");
    detail::check_window_index(n, N, "variance_event_frequency");

    VarianceFrequencyResult result;
    result.n = n;
    result.threshold = std::exp(-2.2 * W) / std::sqrt(std::log(static_cast<double>(N)));
    result.outside_stated_regime = W > std::cbrt(std::log(static_cast<double>(N)));

    const std::size_t count = static_cast<std::size_t>(std::max(n - N - 1, 1));
    TrialTable table =
        run_trials(trials, seed, workers, [&](std::uint64_t trial_seed, std::size_t) {
            const GaussianStream stream = GaussianStream::sample(trial_seed, count);
            return std::vector<double>{variance_sum(stream, n, N)};
        });
    result.frequency = reduce_frequency(table, 0, result.threshold);
    result.per_trial_value.reserve(table.rows.size());
    for (const auto& row : table.rows)
        if (!row.empty()) result.per_trial_value.push_back(row[0]);
    return result;
}

struct CensusFrequencyResult {
    BallotEstimate frequency; // of {max_n |B_n| <= bound}
    double bound;             // (log N)^{7/10}
    double threshold;         // census threshold used
    std::vector<double> per_trial_max;
};

/// Frequency of {max_n |B_n| <= (log N)^{7/10}} over fresh realizations.
inline CensusFrequencyResult census_bound_frequency(int N, std::size_t trials,
                                                    std::uint64_t seed, int workers = 0,
                                                    std::optional<double> threshold = {}) {
    CensusFrequencyResult result;
    result.bound = std::pow(std::log(static_cast<double>(N)), 0.7);
    result.threshold =
        threshold ? *threshold : std::pow(std::log(static_cast<double>(N)), -0.8);

    const CoeffRange r = coeff_range(N);
    const std::size_t count = static_cast<std::size_t>(std::max(r.hi - N - 1, 1));
    TrialTable table =
        run_trials(trials, seed, workers, [&](std::uint64_t trial_seed, std::size_t) {
            const GaussianStream stream = GaussianStream::sample(trial_seed, count);
            const CensusResult census = covariance_census(stream, N, result.threshold);
            return std::vector<double>{static_cast<double>(census.max_count)};
        });

    std::size_t hits = 0, n_ok = 0;
    result.per_trial_max.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (row.empty()) continue;
        ++n_ok;
        result.per_trial_max.push_back(row[0]);
        if (row[0] <= result.bound) ++hits;
    }
    result.frequency = detail::from_counts(hits, n_ok, 0);
    return result;
}

} // namespace powser

#endif // POWSER_CHAOS_INTEGRALS_HPP
