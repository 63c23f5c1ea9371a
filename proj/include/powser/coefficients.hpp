#ifndef POWSER_COEFFICIENTS_HPP
#define POWSER_COEFFICIENTS_HPP

// Coefficients c(n) of exp(sum_{k<=K} X(k) z^k / sqrt(k)).
//
// Three independent routes are provided:
//   * coeffs_by_recurrence  -- the production path.  From F' = G' F,
//         n c(n) = sum_{k<=min(n,K)} sqrt(k) X(k) c(n-k),   c(0) = 1.
//     O(D^2) for degree D.
//   * coeffs_by_partitions  -- exponential-cost oracle, the partition sum
//         c(n) = sum over partitions of n with parts <= K of
//                prod_j (X(j)/sqrt(j))^{m_j} / m_j!.
//   * cauchy_recover        -- contour quadrature of F on |z| = r.
// When K >= n, c(n) is the full coefficient A(n); a finite cap K gives the
// K-smooth restriction.

#include <complex>
#include <string>
#include <vector>

#include "powser/angles.hpp"
#include "powser/errors.hpp"
#include "powser/gaussian_stream.hpp"
#include "powser/partitions.hpp"
#include "powser/scales.hpp"

namespace powser {

class CoefficientSeries {
public:
    /// Takes ownership of c(0..D); c(0) must be 1.
    CoefficientSeries(std::vector<std::complex<double>> coeffs, double smoothness_cap)
        : coeffs_(std::move(coeffs)), cap_(smoothness_cap) {
        if (coeffs_.empty() || coeffs_.front() != std::complex<double>(1.0, 0.0))
            throw InputError("CoefficientSeries: c(0) must equal 1");
    }

    std::complex<double> c(int n) const {
        if (n < 0 || n > degree())
            throw InputError("CoefficientSeries: coefficient index " + std::to_string(n) +
                             " outside degree " + std::to_string(degree()));
        return coeffs_[static_cast<std::size_t>(n)];
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double smoothness_cap() const { return cap_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

private:
    std::vector<std::complex<double>> coeffs_;
    double cap_;
};

/// Derivative recurrence for c(0..degree) with parts capped at `cap`.
inline CoefficientSeries coeffs_by_recurrence(const GaussianStream& stream, int degree,
                                              double cap) {
    if (degree < 0) throw InputError("coeffs_by_recurrence: degree must be >= 0");
    const long long kcap = parts_cap(cap);
    const long long needed = std::min<long long>(degree, kcap);
    stream.require_length(static_cast<std::size_t>(std::max<long long>(needed, 0)),
                          "coeffs_by_recurrence");

    std::vector<std::complex<double>> c(static_cast<std::size_t>(degree) + 1);
    c[0] = 1.0;
    // w(k) = sqrt(k) X(k), fixed per stream
    std::vector<std::complex<double>> w(static_cast<std::size_t>(needed) + 1);
    for (long long k = 1; k <= needed; ++k)
        w[static_cast<std::size_t>(k)] = std::sqrt(static_cast<double>(k)) * stream.x(static_cast<std::size_t>(k));

    for (int n = 1; n <= degree; ++n) {
        const long long kmax = std::min<long long>(n, kcap);
        std::complex<double> acc = 0.0;
        for (long long k = 1; k <= kmax; ++k)
            acc += w[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(n - k)];
        c[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
    }
    return CoefficientSeries(std::move(c), cap);
}

/// a(lambda) = prod_j (X(j)/sqrt(j))^{m_j} / m_j!
inline std::complex<double> partition_weight(const GaussianStream& stream,
                                             const Partition& lambda) {
    std::complex<double> w = 1.0;
    for (const auto& [part, mult] : lambda.multiplicities()) {
        const std::complex<double> base = stream.x(static_cast<std::size_t>(part)) /
                                          std::sqrt(static_cast<double>(part));
        for (int i = 1; i <= mult; ++i) w *= base / static_cast<double>(i);
    }
    return w;
}

/// Exact partition sum for c(n) with parts <= cap. Enumeration oracle;
/// refuses n above `limit`.
inline std::complex<double> coeffs_by_partitions(const GaussianStream& stream, int n, double cap,
                                                 int limit = kDefaultEnumerationLimit) {
    if (n < 0) throw InputError("coeffs_by_partitions: n must be >= 0");
    if (n == 0) return 1.0;
    const long long kcap = std::min<long long>(parts_cap(cap), n);
    if (kcap < 1) return 0.0;
    stream.require_length(static_cast<std::size_t>(kcap), "coeffs_by_partitions");
    std::complex<double> acc = 0.0;
    for (const Partition& lambda : enumerate_partitions(n, static_cast<int>(kcap), limit))
        acc += partition_weight(stream, lambda);
    return acc;
}

namespace detail {
inline constexpr double kExpOverflowThreshold = 700.0; // Re log F above this overflows exp

/// log F_K(r e^{it}) as the finite sum over k <= cap.
inline std::complex<double> log_euler_on_circle(const GaussianStream& stream, long long kcap,
                                                double radius, double t) {
    const std::complex<double> step = radius * std::complex<double>(std::cos(t), std::sin(t));
    std::complex<double> zk = 1.0;
    std::complex<double> acc = 0.0;
    for (long long k = 1; k <= kcap; ++k) {
        zk *= step;
        acc += stream.x(static_cast<std::size_t>(k)) * zk / std::sqrt(static_cast<double>(k));
    }
    return acc;
}
} // namespace detail

/// Contour recovery of c(n): the Q-point trapezoid discretization of
/// (1/2 pi i) \oint F_K(z) z^{-(n+1)} dz on |z| = r,
///   (1 / (Q r^n)) sum_{q<Q} F_K(r e^{2 pi i q / Q}) e^{-2 pi i n q / Q}.
/// For r < 1 the only systematic error is aliasing,
///   sum_{j>=1} c(n + jQ) r^{jQ},
/// which the caller controls through r and Q (default choice r = 0.98,
/// Q = 1024 puts r^Q near 1e-9).
inline std::complex<double> cauchy_recover(const GaussianStream& stream, int n, double cap,
                                           double radius, int points) {
    if (radius <= 0.0 || radius > 1.0)
        throw SpecError("cauchy_recover: radius must lie in (0, 1], got " +
                        std::to_string(radius));
    if (points < 1) throw SpecError("cauchy_recover: points must be >= 1");
    if (n < 0) throw InputError("cauchy_recover: n must be >= 0");
    const long long kcap = parts_cap(cap);
    stream.require_length(static_cast<std::size_t>(kcap), "cauchy_recover");

    std::complex<double> acc = 0.0;
    for (int q = 0; q < points; ++q) {
        const double t = kTwoPi * q / points;
        const std::complex<double> logf = detail::log_euler_on_circle(stream, kcap, radius, t);
        if (logf.real() > detail::kExpOverflowThreshold)
            throw OverflowError("cauchy_recover: exp overflow at t = " + std::to_string(t), t);
        // e^{-2 pi i n q / Q} with the integer phase reduced mod Q
        const long long phase = static_cast<long long>(n) * q % points;
        const double a = -kTwoPi * static_cast<double>(phase) / points;
        acc += std::exp(logf) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return acc / (static_cast<double>(points) * std::pow(radius, n));
}

} // namespace powser

#endif // POWSER_COEFFICIENTS_HPP
