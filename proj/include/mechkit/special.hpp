#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mechkit {

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients.  Relative error below 1e-13
// over the reflection-extended real line away from the poles.
inline constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};

inline double lanczos_core(double x) {
    // valid for x >= 0.5
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail

/**
 * @brief Gamma function for real argument.
 *
 * Reflection formula below 0.5, Lanczos core above.  Throws on the poles at
 * zero and the negative integers.
 */
inline double gamma(double x) {
    if (detail::is_nonpositive_integer(x))
        throw std::invalid_argument("gamma: pole at non-positive integer " + std::to_string(x));
    if (x >= 0.5) return detail::lanczos_core(x);
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return M_PI / (std::sin(M_PI * x) * detail::lanczos_core(1.0 - x));
}

/**
 * @brief Reciprocal gamma, entire on the real line.
 *
 * Returns exactly zero at the poles of gamma, which is what alternating
 * kernel expansions need (pole terms drop out instead of exploding).
 */
inline double recip_gamma(double x) {
    if (detail::is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) return 1.0 / detail::lanczos_core(x);
    return std::sin(M_PI * x) * detail::lanczos_core(1.0 - x) / M_PI;
}

namespace detail {

// E_beta(-z) for beta in [1,2], z >= 0: the relaxation kernel family shared
// by the shear-flow solvers.  beta = 1 is exp(-z), beta = 2 is cos(sqrt z).
// Interior orders interpolate between diffusion and wave behaviour.
//
// Branch selection is by the ring radius r = z^(1/beta).  The power series
// in long double keeps absolute round-off near exp(r) * eps, so it is used
// up to r = 21.5 (round-off ~ 2e-10); beyond that the algebraic tail plus
// the conjugate exponential pair is accurate to ~ exp(-r).
inline double ml_series_branch(double beta, double z) {
    // log-gamma values are reused heavily with a fixed order by the modal
    // solvers, so keep a lazily grown per-order table
    static thread_local double cached_beta = -1.0;
    static thread_local std::vector<long double> lg;
    if (beta != cached_beta) {
        cached_beta = beta;
        lg.assign(1, 0.0L);
    }
    const long double bl = beta;
    long double sum = 1.0L, comp = 0.0L;
    const long double lnz = std::log(static_cast<long double>(z));
    const double r = std::pow(z, 1.0 / beta);
    const int k_peak = static_cast<int>(r / beta) + 2;
    for (int k = 1; k < 4000; ++k) {
        if (static_cast<int>(lg.size()) <= k)
            lg.push_back(std::lgamma(bl * lg.size() + 1.0L));
        // each term evaluated directly so log-gamma round-off does not
        // accumulate through a recurrence
        long double term = std::exp(k * lnz - lg[k]);
        if (k % 2) term = -term;
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (k > k_peak && std::fabs(term) < 1e-25L) break;
    }
    return static_cast<double>(sum);
}

inline double ml_asymptotic_branch(double beta, double z) {
    const double r = std::pow(z, 1.0 / beta);
    // conjugate saddle pair: (2/beta) e^{r cos(pi/beta)} cos(r sin(pi/beta))
    const double ang = M_PI / beta;
    double sum = (2.0 / beta) * std::exp(r * std::cos(ang)) * std::cos(r * std::sin(ang));
    // algebraic tail, truncated at the optimal index ~ r/beta
    double prev = std::numeric_limits<double>::max();
    const int n_max = std::min(static_cast<int>(r / beta) + 1,
                               static_cast<int>(170.0 / beta));
    double zpow = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        zpow /= z;
        if (zpow == 0.0) break;
        const double term = (n % 2 ? 1.0 : -1.0) * zpow * recip_gamma(1.0 - beta * n);
        if (term == 0.0) continue;  // gamma pole: index contributes nothing
        if (std::fabs(term) > prev) break;
        sum += term;
        prev = std::fabs(term);
    }
    return sum;
}

inline double mittag_leffler_neg(double beta, double z) {
    if (!(beta >= 1.0 && beta <= 2.0))
        throw std::invalid_argument("mittag_leffler_neg: beta outside [1,2]");
    if (!(z >= 0.0))
        throw std::invalid_argument("mittag_leffler_neg: negative argument");
    if (z == 0.0) return 1.0;
    if (beta == 1.0) return std::exp(-z);
    if (beta == 2.0) return std::cos(std::sqrt(z));
    const double r = std::pow(z, 1.0 / beta);
    return r <= 21.5 ? ml_series_branch(beta, z) : ml_asymptotic_branch(beta, z);
}

}  // namespace detail

/**
 * @brief Parameters of the bounded relaxation-kernel power series
 *        C(tau) = sum_k (-1)^k a^{2k} tau^{2km} / Gamma(2km + 1).
 */
struct SeriesParams {
    double a;
    double m;
    double tol = 1e-12;
    int max_terms = 2000;
};

inline void validate_series_params(const SeriesParams& p) {
    if (!(p.a > 0.0)) throw std::invalid_argument("SeriesParams: a must be positive");
    if (!(p.m >= 0.5 && p.m <= 1.0))
        throw std::invalid_argument("SeriesParams: m must lie in [1/2, 1]");
    if (!(p.tol > 0.0 && p.tol < 1.0))
        throw std::invalid_argument("SeriesParams: tol must lie in (0,1)");
    if (p.max_terms < 8) throw std::invalid_argument("SeriesParams: max_terms < 8");
}

struct SeriesResult {
    double value = 0.0;
    bool converged = false;
    int terms_used = 0;
    double tail_bound = 0.0;  // magnitude of the first omitted term
};

/**
 * @brief Partial sum of the bounded kernel series with an alternating-series
 *        tail bound.
 *
 * Converged means the next term dropped below tol relative to the sum inside
 * the monotone-decay zone.  If max_terms is exhausted first the partial sum
 * is still returned, flagged, with the last computed term as the tail bound;
 * large a^2 tau^{2m} is the regime where the caller should switch to an
 * asymptotic evaluation instead of pushing the series harder.
 */
inline SeriesResult bounded_kernel_series(const SeriesParams& p, double tau) {
    validate_series_params(p);
    if (!(tau >= 0.0)) throw std::invalid_argument("bounded_kernel_series: tau < 0");
    if (tau == 0.0) return {1.0, true, 1, 0.0};

    const long double beta = 2.0L * p.m;
    const long double lnz =
        2.0L * std::log(static_cast<long double>(p.a)) +
        beta * std::log(static_cast<long double>(tau));
    long double sum = 1.0L, comp = 0.0L;
    long double prev_mag = 1.0L;
    for (int k = 1; k <= p.max_terms; ++k) {
        long double term = std::exp(k * lnz - std::lgamma(beta * k + 1.0L));
        if (k % 2) term = -term;
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const long double mag = std::fabs(term);
        if (mag <= prev_mag && mag <= p.tol * std::fabs(sum))
            return {static_cast<double>(sum), true, k + 1, static_cast<double>(mag)};
        prev_mag = mag;
    }
    return {static_cast<double>(sum), false, p.max_terms + 1,
            static_cast<double>(prev_mag)};
}

}  // namespace mechkit
