#ifndef POWSER_MC_ENGINE_HPP
#define POWSER_MC_ENGINE_HPP

// Reproducible parallel Monte Carlo orchestration.
//
// A per-trial function maps (trial_seed, trial_index) to a row of doubles;
// trial_seed = derive_seed(master_seed, trial_index). Rows are stored by
// trial index and every reduction runs single-threaded over that ordered
// list, so results are bit-identical for any worker count and any split of
// the trial range. Failed trials are recorded with their index; more than 1%
// failures aborts the experiment.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "powser/barrier.hpp"
#include "powser/coefficients.hpp"
#include "powser/errors.hpp"
#include "powser/rng.hpp"
#include "powser/scales.hpp"

namespace powser {

struct TrialFailure {
    std::size_t index;
    std::string message;
};

struct TrialTable {
    std::vector<std::vector<double>> rows; // indexed by trial; empty row = failed
    std::vector<TrialFailure> failures;    // sorted by index
    std::size_t attempted = 0;

    std::size_t succeeded() const { return attempted - failures.size(); }
};

struct EstimateWithError {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::string reduction; // identifier of the per-trial reduction
};

inline constexpr double kTrialFailureAbortFraction = 0.01;

/// Run `trials` independent trials of `per_trial` on `workers` threads
/// (workers <= 0 picks hardware concurrency). Output is independent of the
/// worker count.
template <class PerTrial>
TrialTable run_trials(std::size_t trials, std::uint64_t master_seed, int workers,
                      PerTrial&& per_trial) {
    if (trials == 0) throw SpecError("run_trials: trials must be >= 1");
    TrialTable table;
    table.attempted = trials;
    table.rows.resize(trials);

    std::size_t nworkers = workers > 0
                               ? static_cast<std::size_t>(workers)
                               : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    nworkers = std::min(nworkers, trials);

    std::mutex failure_mutex;
    std::vector<TrialFailure> failures;
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= trials) return;
            try {
                table.rows[i] = per_trial(derive_seed(master_seed, i), i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failures.push_back({i, e.what()});
            }
        }
    };

    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(failures.begin(), failures.end(),
              [](const TrialFailure& a, const TrialFailure& b) { return a.index < b.index; });
    table.failures = std::move(failures);
    if (static_cast<double>(table.failures.size()) >
        kTrialFailureAbortFraction * static_cast<double>(trials)) {
        throw TrialAbortError("run_trials: " + std::to_string(table.failures.size()) + " of " +
                              std::to_string(trials) + " trials failed (first: " +
                              table.failures.front().message + ")");
    }
    return table;
}

/// Mean and standard error of one column over the successful trials,
/// accumulated in trial order.
inline EstimateWithError reduce_mean(const TrialTable& table, std::size_t column,
                                     std::string reduction = "mean") {
    double sum = 0.0, sumsq = 0.0;
    std::size_t n = 0;
    for (const auto& row : table.rows) {
        if (row.empty()) continue;
        const double v = row.at(column);
        sum += v;
        sumsq += v * v;
        ++n;
    }
    if (n == 0) throw TrialAbortError("reduce_mean: no successful trials");
    EstimateWithError e;
    e.trials = n;
    e.reduction = std::move(reduction);
    e.estimate = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                                         static_cast<double>(n));
    e.std_error = n > 1 ? std::sqrt(var / static_cast<double>(n)) : 0.0;
    return e;
}

/// Frequency of {row[column] >= threshold} with binomial standard error.
inline BallotEstimate reduce_frequency(const TrialTable& table, std::size_t column,
                                       double threshold) {
    std::size_t hits = 0, n = 0;
    for (const auto& row : table.rows) {
        if (row.empty()) continue;
        ++n;
        if (row.at(column) >= threshold) ++hits;
    }
    if (n == 0) throw TrialAbortError("reduce_frequency: no successful trials");
    return detail::from_counts(hits, n, 0);
}

// ---------------------------------------------------------------------------
// Headline experiments.
// ---------------------------------------------------------------------------

struct MomentRow {
    int n;
    double mean_abs;
    double se_abs;
    double mean_sq;
    double se_sq;
    double scaled_abs; // mean_abs * (log n)^{1/4}
};

/// Per-n sample moments of |A(n)| and |A(n)|^2 over fresh realizations.
/// One realization serves the whole grid: the coefficients to the largest n
/// are generated once per trial by the recurrence.
inline std::vector<MomentRow> moment_scan(const std::vector<int>& n_grid, std::size_t trials,
                                          std::uint64_t seed, int workers = 0) {
    if (n_grid.empty()) throw SpecError("moment_scan: empty n grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) throw SpecError("moment_scan: grid entries must be >= 2");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw SpecError("moment_scan: n grid must be strictly ascending");
    }
    const int top = n_grid.back();

    TrialTable table = run_trials(trials, seed, workers,
                                  [&n_grid, top](std::uint64_t trial_seed, std::size_t) {
        const GaussianStream stream =
            GaussianStream::sample(trial_seed, static_cast<std::size_t>(top));
        const CoefficientSeries series =
            coeffs_by_recurrence(stream, top, static_cast<double>(top));
        std::vector<double> row;
        row.reserve(2 * n_grid.size());
        for (int n : n_grid) {
            const double a = std::abs(series.c(n));
            row.push_back(a);
            row.push_back(a * a);
        }
        return row;
    });

    std::vector<MomentRow> rows;
    rows.reserve(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const EstimateWithError abs_est = reduce_mean(table, 2 * i, "mean|A(n)|");
        const EstimateWithError sq_est = reduce_mean(table, 2 * i + 1, "mean|A(n)|^2");
        MomentRow r;
        r.n = n_grid[i];
        r.mean_abs = abs_est.estimate;
        r.se_abs = abs_est.std_error;
        r.mean_sq = sq_est.estimate;
        r.se_sq = sq_est.std_error;
        r.scaled_abs = abs_est.estimate * std::pow(std::log(static_cast<double>(r.n)), 0.25);
        rows.push_back(r);
    }
    return rows;
}

struct MaxCoeffResult {
    BallotEstimate frequency;          // of {max |A(n)| >= threshold}
    double threshold;                  // (log N)^{1/4} / e^{6W/5}
    int n_lo, n_hi;                    // scanned range [ceil(8N/7), floor(4N/3)]
    bool outside_stated_regime;        // W > (1/10) log log N
    std::vector<double> per_trial_max; // recorded maxima, by trial
};

/// Frequency of {max_{8N/7 <= n <= 4N/3} |A(n)| >= (log N)^{1/4} / e^{6W/5}}
/// over fresh realizations.
inline MaxCoeffResult coeff_max_frequency(int N, double W, std::size_t trials,
                                          std::uint64_t seed, int workers = 0) {
    if (N < 2) throw SpecError("coeff_max_frequency: N must be >= 2");
    if (W < 1.0) throw SpecError("coeff_max_frequency: W must be >= 1");
    const auto [n_lo, n_hi] = coeff_range(N);
    if (n_lo > n_hi)
        throw SpecError("coeff_max_frequency: range [8N/7, 4N/3] contains no integer for N = " +
                        std::to_string(N));

    MaxCoeffResult result;
    result.n_lo = n_lo;
    result.n_hi = n_hi;
    result.threshold = std::pow(std::log(static_cast<double>(N)), 0.25) / std::exp(1.2 * W);
    result.outside_stated_regime =
        W > 0.1 * std::log(std::log(static_cast<double>(N)));

    TrialTable table =
        run_trials(trials, seed, workers, [n_lo, n_hi](std::uint64_t trial_seed, std::size_t) {
            const GaussianStream stream =
                GaussianStream::sample(trial_seed, static_cast<std::size_t>(n_hi));
            const CoefficientSeries series =
                coeffs_by_recurrence(stream, n_hi, static_cast<double>(n_hi));
            double best = 0.0;
            for (int n = n_lo; n <= n_hi; ++n) best = std::max(best, std::abs(series.c(n)));
            return std::vector<double>{best};
        });

    result.frequency = reduce_frequency(table, 0, result.threshold);
    result.per_trial_max.reserve(table.rows.size());
    for (const auto& row : table.rows)
        if (!row.empty()) result.per_trial_max.push_back(row[0]);
    return result;
}

} // namespace powser

#endif // POWSER_MC_ENGINE_HPP
