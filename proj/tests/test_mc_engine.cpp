#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "powser/mc_engine.hpp"

using namespace powser;

TEST_CASE("constant per-trial function gives the constant with zero SE") {
    auto table = run_trials(100, 1, 1, [](std::uint64_t, std::size_t) {
        return std::vector<double>{3.5};
    });
    const auto est = reduce_mean(table, 0);
    CHECK(est.estimate == 3.5);
    CHECK(est.std_error == 0.0);
    CHECK(est.trials == 100);
}

TEST_CASE("bit-identical output for any worker count") {
    auto per_trial = [](std::uint64_t trial_seed, std::size_t) {
        const NormalKernel kernel(trial_seed);
        double s = 0.0;
        for (int i = 0; i < 37; ++i) s += kernel.at(static_cast<std::uint64_t>(i));
        return std::vector<double>{s, s * s};
    };
    const auto t1 = run_trials(500, 42, 1, per_trial);
    const auto t8 = run_trials(500, 42, 8, per_trial);
    REQUIRE(t1.rows.size() == t8.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i) CHECK(t1.rows[i] == t8.rows[i]);
    CHECK(reduce_mean(t1, 0).estimate == reduce_mean(t8, 0).estimate);
    CHECK(reduce_mean(t1, 1).std_error == reduce_mean(t8, 1).std_error);
}

TEST_CASE("split-and-merge reproduces the unsplit estimate exactly") {
    auto per_trial = [](std::uint64_t trial_seed, std::size_t) {
        return std::vector<double>{unit_half_open(counter_word(trial_seed, 0))};
    };
    const std::size_t total = 1000;
    const auto whole = run_trials(total, 7, 2, per_trial);

    // rebuild the table from arbitrary contiguous chunks, merged in index order
    TrialTable merged;
    merged.attempted = total;
    std::vector<std::size_t> cuts = {0, 137, 400, 999, total};
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        for (std::size_t i = cuts[c]; i < cuts[c + 1]; ++i) {
            const auto row = per_trial(derive_seed(7, i), i);
            merged.rows.push_back(row);
        }
    }
    const auto a = reduce_mean(whole, 0);
    const auto b = reduce_mean(merged, 0);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("failures are recorded with their index; a few do not abort") {
    auto table = run_trials(500, 1, 4, [](std::uint64_t, std::size_t index) {
        if (index == 123 || index == 456)
            throw std::runtime_error("synthetic failure");
        return std::vector<double>{1.0};
    });
    REQUIRE(table.failures.size() == 2);
    CHECK(table.failures[0].index == 123);
    CHECK(table.failures[1].index == 456);
    CHECK(table.succeeded() == 498);
    CHECK(reduce_mean(table, 0).trials == 498);
}

TEST_CASE("more than 1% failures aborts") {
    CHECK_THROWS_AS(run_trials(100, 1, 2,
                               [](std::uint64_t, std::size_t index) -> std::vector<double> {
                                   if (index % 10 == 0) throw std::runtime_error("boom");
                                   return {1.0};
                               }),
                    TrialAbortError);
}

TEST_CASE("second-moment normalization at n = 64") {
    auto table = run_trials(20000, 90, 0, [](std::uint64_t trial_seed, std::size_t) {
        const auto stream = GaussianStream::sample(trial_seed, 64);
        const auto series = coeffs_by_recurrence(stream, 64, 64.0);
        return std::vector<double>{std::norm(series.c(64))};
    });
    const auto est = reduce_mean(table, 0);
    CHECK(std::fabs(est.estimate - 1.0) <= 4.0 * est.std_error);
}

TEST_CASE("moment scan: grid validation and Cauchy-Schwarz consistency") {
    CHECK_THROWS_AS(moment_scan({}, 10, 1), SpecError);
    CHECK_THROWS_AS(moment_scan({64, 64}, 10, 1), SpecError);
    CHECK_THROWS_AS(moment_scan({64, 32}, 10, 1), SpecError);

    const auto rows = moment_scan({16, 32, 64}, 2000, 5);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(std::fabs(r.mean_sq - 1.0) <= 4.0 * r.se_sq);
        CHECK(r.mean_abs <= std::sqrt(r.mean_sq) * (1.0 + 4.0 * r.se_sq));
        CHECK_THAT(r.scaled_abs,
                   Catch::Matchers::WithinRel(
                       r.mean_abs * std::pow(std::log(static_cast<double>(r.n)), 0.25), 1e-12));
    }
}

TEST_CASE("coefficient maximum frequency: trivial threshold and monotonicity") {
    // W huge: threshold ~ 0, every trial clears it
    const auto sure = coeff_max_frequency(64, 12.0, 50, 3);
    CHECK(sure.frequency.probability == 1.0);
    CHECK(sure.outside_stated_regime);
    CHECK(sure.n_lo == 74);
    CHECK(sure.n_hi == 85);
    REQUIRE(sure.per_trial_max.size() == 50);

    // doubling the threshold can only shrink the event (same trials)
    std::size_t base_hits = 0, doubled_hits = 0;
    for (double m : sure.per_trial_max) {
        if (m >= sure.threshold) ++base_hits;
        if (m >= 2.0 * sure.threshold) ++doubled_hits;
    }
    CHECK(doubled_hits <= base_hits);
}

TEST_CASE("coefficient maximum frequency: domain") {
    CHECK_THROWS_AS(coeff_max_frequency(2, 3.0, 10, 1), SpecError);  // empty window
    CHECK_THROWS_AS(coeff_max_frequency(64, 0.5, 10, 1), SpecError); // W < 1
}
