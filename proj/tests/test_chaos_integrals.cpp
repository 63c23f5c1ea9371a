#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "powser/chaos_integrals.hpp"
#include "powser/coefficients.hpp"
#include "powser/gaussian_stream.hpp"

using namespace powser;

namespace {
std::vector<std::complex<double>> zeros(std::size_t n) {
    return std::vector<std::complex<double>>(n, {0.0, 0.0});
}
} // namespace

TEST_CASE("parseval: constant series") {
    const auto s = GaussianStream::inject(zeros(4));
    const auto series = coeffs_by_recurrence(s, 4, 4.0);
    const auto r = parseval_mass(series, {64, 0.7});
    CHECK_THAT(r.integral, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(r.coefficient_sum == 1.0);
}

TEST_CASE("parseval: injected single coefficient") {
    // c(0) = 1, c(3) = 2i, r = 0.5: sum = 1 + 4 * 0.5^6 = 1.0625
    std::vector<std::complex<double>> c(4, {0.0, 0.0});
    c[0] = 1.0;
    c[3] = {0.0, 2.0};
    const CoefficientSeries series(c, 64.0);
    const auto r = parseval_mass(series, {16, 0.5});
    CHECK_THAT(r.coefficient_sum, Catch::Matchers::WithinAbs(1.0625, 1e-15));
    CHECK_THAT(r.integral, Catch::Matchers::WithinAbs(1.0625, 1e-12));
}

TEST_CASE("parseval identity on a seeded series") {
    const auto s = GaussianStream::sample(31, 256);
    const auto series = coeffs_by_recurrence(s, 256, 256.0);
    for (double radius : {0.5, 0.99}) {
        const auto r = parseval_mass(series, {1024, radius});
        CHECK(std::fabs(r.integral - r.coefficient_sum) <= 1e-8 * std::fabs(r.coefficient_sum));
    }
}

TEST_CASE("parseval exactness guard") {
    const auto s = GaussianStream::sample(31, 64);
    const auto series = coeffs_by_recurrence(s, 64, 64.0);
    CHECK_THROWS_AS(parseval_mass(series, {128, 0.9}), SpecError); // Q = 2D
    CHECK_NOTHROW(parseval_mass(series, {129, 0.9}));
}

TEST_CASE("circle mass: zero noise integrates to 2 pi") {
    const auto s = GaussianStream::inject(zeros(8));
    const auto r = low_moment_mass(s, 8.0, 0.0);
    CHECK(r.converged);
    CHECK_THAT(r.value, Catch::Matchers::WithinRel(kTwoPi, 1e-12));
}

TEST_CASE("circle mass: strong damping kills every term") {
    const auto s = GaussianStream::sample(7, 64);
    const auto r = low_moment_mass(s, 64.0, 50.0);
    CHECK_THAT(r.value, Catch::Matchers::WithinRel(kTwoPi, 1e-6));
}

TEST_CASE("circle mass: node-doubling self-convergence") {
    const auto s = GaussianStream::sample(55, 1024);
    MassOptions a;
    a.initial_points = 1 << 14;
    a.max_points = 1 << 14;
    MassOptions b;
    b.initial_points = 1 << 15;
    b.max_points = 1 << 15;
    const double va = low_moment_mass(s, 1024.0, 0.0, a).value;
    const double vb = low_moment_mass(s, 1024.0, 0.0, b).value;
    CHECK(std::fabs(va - vb) <= 0.01 * std::fabs(vb));
}

TEST_CASE("circle mass: node rotation by one spacing is invariant") {
    const auto s = GaussianStream::sample(19, 128);
    MassOptions base;
    base.initial_points = 4096;
    base.max_points = 4096;
    MassOptions rotated = base;
    rotated.offset = kTwoPi / 4096;
    const double v0 = low_moment_mass(s, 128.0, 0.0, base).value;
    const double v1 = low_moment_mass(s, 128.0, 0.0, rotated).value;
    CHECK(std::fabs(v0 - v1) <= 1e-6 * std::fabs(v0));
}

TEST_CASE("circle mass: non-convergence is flagged, not thrown") {
    const auto s = GaussianStream::sample(55, 256);
    MassOptions opts;
    opts.initial_points = 8;
    opts.max_points = 16;
    const auto r = low_moment_mass(s, 256.0, 0.0, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.points_used == 16);
}

TEST_CASE("circle mass cross-checks the truncated-polynomial route at small cap") {
    // two deliberately distinct evaluation paths: pointwise exp vs Parseval sum
    const auto s = GaussianStream::sample(23, 8);
    const double sigma = 0.1;
    const auto mass = low_moment_mass(s, 8.0, sigma);
    // coefficients of F_8 up to degree 256; the tail beyond is dwarfed by e^{-2 sigma n}
    const auto series = coeffs_by_recurrence(s, 256, 8.0);
    double csum = 0.0;
    for (int k = 0; k <= 256; ++k)
        csum += std::norm(series.c(k)) * std::exp(-2.0 * sigma * k);
    CHECK_THAT(mass.value, Catch::Matchers::WithinRel(kTwoPi * csum, 1e-4));
}

TEST_CASE("mass threshold frequency: maximal W makes the event certain") {
    const auto r = mass_threshold_frequency(64.0, 0.0, 12.0, 20, 3, 2);
    CHECK(r.frequency.probability == 1.0);
    CHECK(r.outside_stated_regime);
}

TEST_CASE("mass threshold frequency: W domain") {
    CHECK_THROWS_AS(mass_threshold_frequency(64.0, 0.0, 0.5, 10, 3), SpecError);
}

TEST_CASE("smooth tail: cap inactive reproduces the full coefficient") {
    const auto s = GaussianStream::sample(40, 64);
    const auto full = coeffs_by_recurrence(s, 10, 64.0);
    for (int n = 0; n <= 10; ++n) CHECK(smooth_tail(s, n, 64.0) == full.c(n));
    const auto z = GaussianStream::inject(zeros(8));
    CHECK(smooth_tail(z, 5, 8.0) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("rough/smooth decomposition identity") {
    const int N = 24;
    const auto s = GaussianStream::sample(8, 48);
    const auto full = coeffs_by_recurrence(s, 48, 48.0);
    for (int n = N + 1; n <= 2 * N; ++n) {
        std::complex<double> rough = 0.0;
        for (int k = N + 1; k <= n; ++k)
            rough += s.x(static_cast<std::size_t>(k)) / std::sqrt(static_cast<double>(k)) *
                     full.c(n - k);
        const auto lhs = full.c(n);
        const auto rhs = rough + smooth_tail(s, n, static_cast<double>(N));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("variance sum: zero noise leaves only the k = n term") {
    const int N = 21;
    const auto r = coeff_range(N);
    const auto z = GaussianStream::inject(zeros(16));
    const int n = r.lo;
    CHECK_THAT(variance_sum(z, n, N), Catch::Matchers::WithinAbs(1.0 / n, 1e-15));
    // generic stream: the guaranteed A(0) term keeps it positive
    const auto s = GaussianStream::sample(2, 16);
    CHECK(variance_sum(s, n, N) >= 1.0 / n);
}

TEST_CASE("variance sum range guard") {
    const auto s = GaussianStream::sample(2, 64);
    CHECK_THROWS_AS(variance_sum(s, 100, 1024), SpecError);
    CHECK_THROWS_AS(variance_sum(s, 2000, 1024), SpecError);
}

TEST_CASE("covariance pairs: Hermitian symmetry and the diagonal") {
    const int N = 40;
    const auto range = coeff_range(N);
    const auto s = GaussianStream::sample(77, 64);
    for (int i = 0; i < 8; ++i) {
        const int n = range.lo + static_cast<int>(mix64(2 * i) % (range.hi - range.lo + 1));
        const int m = range.lo + static_cast<int>(mix64(2 * i + 1) % (range.hi - range.lo + 1));
        const auto nm = covariance_pair(s, n, m, N);
        const auto mn = covariance_pair(s, m, n, N);
        CHECK(std::abs(nm.value - std::conj(mn.value)) <= 1e-12);
    }
    const int n = range.lo + 1;
    const auto diag = covariance_pair(s, n, n, N);
    CHECK(diag.value.imag() == 0.0);
    CHECK(diag.value.real() >= 0.0);
    CHECK(std::fabs(diag.value.real() - variance_sum(s, n, N)) <= 1e-12);

    // zero noise, off-diagonal: A(j) = delta_{j0} makes cross terms vanish
    const auto z = GaussianStream::inject(zeros(16));
    CHECK(std::abs(covariance_pair(z, range.lo, range.lo + 1, N).value) == 0.0);
}

TEST_CASE("census: zero noise counts nothing above the default threshold") {
    const int N = 40; // threshold (log 40)^{-4/5} ~ 0.36 > diagonal 1/n
    const auto z = GaussianStream::inject(zeros(16));
    const auto census = covariance_census(z, N);
    for (int c : census.counts) CHECK(c == 0);
    CHECK(census.max_count == 0);
}

TEST_CASE("census: zero threshold counts the whole window") {
    const int N = 40;
    const auto s = GaussianStream::sample(5, 16);
    const auto census = covariance_census(s, N, 0.0);
    const int window = census.n_hi - census.n_lo + 1;
    for (int c : census.counts) CHECK(c == window);
}

TEST_CASE("variance event frequency runs and flags the regime") {
    const auto r = variance_event_frequency(256, 3.0, 300, 40, 5, 2);
    CHECK(r.frequency.trials == 40);
    CHECK(r.outside_stated_regime); // (log 256)^{1/3} < 3
    CHECK(r.frequency.probability >= 0.0);
    CHECK(r.frequency.probability <= 1.0);
    CHECK_THROWS_AS(variance_event_frequency(256, 0.2, 300, 10, 5), SpecError);
}

TEST_CASE("census bound frequency at the spec's desk scale") {
    const auto r = census_bound_frequency(512, 50, 99, 2);
    CHECK_THAT(r.bound, Catch::Matchers::WithinRel(std::pow(std::log(512.0), 0.7), 1e-12));
    CHECK(r.frequency.probability >= 0.5);
}
