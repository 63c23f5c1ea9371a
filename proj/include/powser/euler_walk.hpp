#ifndef POWSER_EULER_WALK_HPP
#define POWSER_EULER_WALK_HPP

// The random Euler product F_K(z) = exp(sum_{k<=K} X(k) z^k / sqrt(k)) on the
// circle z = e^{-sigma + i t}, and its decomposition into block increments
//   Z_{t,sigma}(m) = sum_{e^{m-1} < k <= e^m} Re(X(k) e^{ikt}) e^{-k sigma} / sqrt(k)
// (k = 1 folded into block 1).  Each Z_t(m) is a centered Gaussian whose
// variance and angular correlation have closed forms,
//   sigma_m^2        = sum_block 1 / (2 k e^{2 k sigma}),
//   rho_{m,t} s_m^2  = sum_block cos(k t) / (2 k e^{2 k sigma}),
// and exp-moments of linear combinations are exactly Gaussian MGFs; both
// closed forms are implemented here next to their Monte Carlo counterparts.

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "powser/angles.hpp"
#include "powser/coefficients.hpp"
#include "powser/errors.hpp"
#include "powser/gaussian_stream.hpp"
#include "powser/rng.hpp"
#include "powser/scales.hpp"

namespace powser {

/// sum_{k<=K} X(k) e^{ikt} e^{-k sigma} / sqrt(k); exp of it is F_K(e^{-sigma+it}).
inline std::complex<double> eval_log_euler(const GaussianStream& stream, double cap, double sigma,
                                           double t) {
    if (sigma < 0.0) throw InputError("eval_log_euler: sigma must be >= 0");
    const long long kcap = parts_cap(cap);
    stream.require_length(static_cast<std::size_t>(kcap), "eval_log_euler");
    return detail::log_euler_on_circle(stream, kcap, std::exp(-sigma), t);
}

/// One evaluation point of the product: |F_K(e^{-sigma+it})| = exp(Re log_value).
struct EulerPoint {
    double t;
    double sigma;
    double cap;
    std::complex<double> log_value;
};

inline EulerPoint euler_point(const GaussianStream& stream, double cap, double sigma, double t) {
    return {t, sigma, cap, eval_log_euler(stream, cap, sigma, t)};
}

/// Block variance sigma_m^2 (exact finite sum).
inline double block_variance(int m, double sigma) {
    if (m < 1) throw InputError("block_variance: m must be >= 1");
    const BlockBounds b = block_bounds(m);
    double acc = 0.0;
    for (long long k = b.lo; k <= b.hi; ++k)
        acc += 1.0 / (2.0 * static_cast<double>(k) * std::exp(2.0 * sigma * static_cast<double>(k)));
    return acc;
}

/// Angular correlation rho_{m,t} = E[Z(m) Z_t(m)] / sigma_m^2, in [-1, 1].
/// The angle is reduced mod 2 pi first, so t = 0 and t = 2 pi give exactly 1.
inline double block_correlation(int m, double t, double sigma) {
    if (m < 1) throw InputError("block_correlation: m must be >= 1");
    const double tr = reduce_angle(t);
    const BlockBounds b = block_bounds(m);
    double num = 0.0, den = 0.0;
    for (long long k = b.lo; k <= b.hi; ++k) {
        const double w = 1.0 / (2.0 * static_cast<double>(k) *
                                std::exp(2.0 * sigma * static_cast<double>(k)));
        num += w * std::cos(static_cast<double>(k) * tr);
        den += w;
    }
    return num / den;
}

/// The walk Z^{(shift)}(m) = Z(shift + m), m = 1..M, along one realization,
/// together with the exact per-block variances and correlations-to-zero.
struct WalkIncrements {
    double t = 0.0;
    double sigma = 0.0;
    int shift = 0;                    // block offset (W + C); 0 = unshifted
    std::vector<double> values;       // Z_t(shift + m), m = 1..M
    std::vector<double> variances;    // sigma_{shift+m}^2
    std::vector<double> rho_to_zero;  // rho_{shift+m, t}

    int length() const { return static_cast<int>(values.size()); }
};

/// Compute M shifted block increments from a realization. Requires the stream
/// to reach k <= e^{shift+M}.
inline WalkIncrements block_increments(const GaussianStream& stream, double sigma, double t,
                                       int shift, int blocks) {
    if (shift < 0) throw InputError("block_increments: shift must be >= 0");
    if (blocks < 1) throw InputError("block_increments: need at least one block");
    if (sigma < 0.0) throw InputError("block_increments: sigma must be >= 0");
    const int top = shift + blocks;
    const long long last = block_bounds(top).hi;
    stream.require_length(static_cast<std::size_t>(last), "block_increments");

    WalkIncrements walk;
    walk.t = t;
    walk.sigma = sigma;
    walk.shift = shift;
    walk.values.reserve(static_cast<std::size_t>(blocks));
    walk.variances.reserve(static_cast<std::size_t>(blocks));
    walk.rho_to_zero.reserve(static_cast<std::size_t>(blocks));

    const std::complex<double> step =
        std::exp(-sigma) * std::complex<double>(std::cos(t), std::sin(t));
    std::complex<double> zk = 1.0;
    long long k = 0;
    for (int m = 1; m <= top; ++m) {
        const BlockBounds b = block_bounds(m);
        double z = 0.0;
        for (k = b.lo; k <= b.hi; ++k) {
            zk = (k == 1) ? step : zk * step;
            if (m > shift)
                z += (stream.x(static_cast<std::size_t>(k)) * zk).real() /
                     std::sqrt(static_cast<double>(k));
        }
        if (m > shift) {
            walk.values.push_back(z);
            walk.variances.push_back(block_variance(m, sigma));
            walk.rho_to_zero.push_back(block_correlation(m, t, sigma));
        }
    }
    return walk;
}

/// sum_{x < k <= y} e^{itk} / (k e^{2 k sigma}) with the oscillatory-sum bound
/// |.| <= 3 pi / (x ||t||) checked alongside (inapplicable when ||t|| = 0).
struct ExpSumResult {
    std::complex<double> value;
    double bound;       // 3 pi / (x ||t||); +inf when inapplicable
    bool bound_applies; // ||t|| != 0
    bool within_bound;  // |value| <= bound (true when inapplicable)
};

inline ExpSumResult exp_sum(double x, double y, double sigma, double t) {
    if (!(x >= 0.5) || !(x < y)) throw InputError("exp_sum: need 1/2 <= x < y");
    if (sigma < 0.0) throw InputError("exp_sum: sigma must be >= 0");
    const double tr = reduce_angle(t);
    const std::complex<double> step(std::cos(tr) * std::exp(-2.0 * sigma),
                                    std::sin(tr) * std::exp(-2.0 * sigma));
    const long long lo = parts_cap(x) + 1;
    const long long hi = parts_cap(y);

    std::complex<double> acc = 0.0;
    if (lo <= hi) {
        // phase e^{i t k} carried iteratively from k = lo
        std::complex<double> ph(std::cos(tr * static_cast<double>(lo)) *
                                    std::exp(-2.0 * sigma * static_cast<double>(lo)),
                                std::sin(tr * static_cast<double>(lo)) *
                                    std::exp(-2.0 * sigma * static_cast<double>(lo)));
        for (long long k = lo; k <= hi; ++k) {
            acc += ph / static_cast<double>(k);
            ph *= step;
        }
    }

    ExpSumResult r;
    r.value = acc;
    const double norm = circle_norm(t);
    r.bound_applies = norm > 0.0;
    r.bound = r.bound_applies ? 3.0 * std::numbers::pi / (x * norm)
                              : std::numeric_limits<double>::infinity();
    r.within_bound = !r.bound_applies || std::abs(acc) <= r.bound;
    return r;
}

/// Exact Gaussian MGF of S = sum_j 2 a_j sum_{x<k<=y} Re(X(k) e^{i k t_j}) e^{-k sigma}/sqrt(k):
///   E[e^S] = exp( sum_{j1,j2} a_{j1} a_{j2} sum_{x<k<=y} cos(k (t_{j2}-t_{j1})) / (k e^{2 k sigma}) ).
inline double joint_exp_moment_closed_form(const std::vector<double>& alphas,
                                           const std::vector<double>& ts, double x, double y,
                                           double sigma) {
    if (alphas.size() != ts.size())
        throw InputError("joint_exp_moment_closed_form: alphas and ts must have equal length");
    if (alphas.empty()) throw InputError("joint_exp_moment_closed_form: empty parameter lists");
    if (!(x >= 0.5) || !(x < y)) throw InputError("joint_exp_moment_closed_form: need 1/2 <= x < y");
    const long long lo = parts_cap(x) + 1;
    const long long hi = parts_cap(y);
    double exponent = 0.0;
    for (std::size_t j1 = 0; j1 < alphas.size(); ++j1) {
        for (std::size_t j2 = 0; j2 < alphas.size(); ++j2) {
            const double dt = reduce_angle(ts[j2] - ts[j1]);
            double inner = 0.0;
            for (long long k = lo; k <= hi; ++k)
                inner += std::cos(static_cast<double>(k) * dt) /
                         (static_cast<double>(k) * std::exp(2.0 * sigma * static_cast<double>(k)));
            exponent += alphas[j1] * alphas[j2] * inner;
        }
    }
    return std::exp(exponent);
}

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

/// Monte Carlo counterpart of joint_exp_moment_closed_form over fresh
/// realizations of the stream; brackets the closed form within a few SE.
inline MomentEstimate joint_exp_moment_mc(const std::vector<double>& alphas,
                                          const std::vector<double>& ts, double x, double y,
                                          double sigma, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw SpecError("joint_exp_moment_mc: trials must be >= 1");
    if (alphas.size() != ts.size())
        throw InputError("joint_exp_moment_mc: alphas and ts must have equal length");
    if (!(x >= 0.5) || !(x < y)) throw InputError("joint_exp_moment_mc: need 1/2 <= x < y");
    const long long lo = parts_cap(x) + 1;
    const long long hi = parts_cap(y);

    // S = sum_k Re(X(k) u(k)) with u(k) = sum_j 2 a_j e^{i k t_j} e^{-k sigma} / sqrt(k)
    std::vector<std::complex<double>> u;
    u.reserve(static_cast<std::size_t>(std::max<long long>(hi - lo + 1, 0)));
    for (long long k = lo; k <= hi; ++k) {
        std::complex<double> w = 0.0;
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const double a = static_cast<double>(k) * ts[j];
            w += 2.0 * alphas[j] * std::complex<double>(std::cos(a), std::sin(a));
        }
        u.push_back(w * std::exp(-sigma * static_cast<double>(k)) /
                    std::sqrt(static_cast<double>(k)));
    }

    double sum = 0.0, sumsq = 0.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const NormalKernel kernel(derive_seed(seed, trial));
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double z0, z1;
            kernel.pair(i, z0, z1);
            const std::complex<double> xk(z0 * inv_sqrt2, z1 * inv_sqrt2);
            s += (xk * u[i]).real();
        }
        const double v = std::exp(s);
        sum += v;
        sumsq += v * v;
    }
    MomentEstimate est;
    est.trials = trials;
    est.mean = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sumsq / static_cast<double>(trials) - est.mean * est.mean);
    est.std_error = std::sqrt(var / static_cast<double>(trials));
    return est;
}

} // namespace powser

#endif // POWSER_EULER_WALK_HPP
