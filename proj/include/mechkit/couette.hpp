#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mechkit/constitutive.hpp"
#include "mechkit/laplace.hpp"
#include "mechkit/quadrature.hpp"
#include "mechkit/special.hpp"

namespace mechkit {

/// Wall motion given as angle and angular rate, both zero at t = 0.
struct DriveMotion {
    std::function<double(double)> value;
    std::function<double(double)> rate;
};

/**
 * @brief Plane shear layer of a fractional medium between a fixed wall at
 *        x = 0 and a driven wall at x = gap.
 */
struct CouetteProblem {
    double gap = 1.0;
    double density = 1.0;
    FractionalLaw law;
    DriveMotion drive;
    int modes = 256;
};

inline void validate_couette(const CouetteProblem& pb, bool need_drive) {
    if (!(pb.gap > 0.0))
        throw std::invalid_argument("CouetteProblem: gap must be positive");
    if (!(pb.density > 0.0))
        throw std::invalid_argument("CouetteProblem: density must be positive");
    validate_law(pb.law);
    if (pb.modes < 1) throw std::invalid_argument("CouetteProblem: modes < 1");
    if (need_drive) {
        if (!pb.drive.value || !pb.drive.rate)
            throw std::invalid_argument("CouetteProblem: drive callbacks missing");
        if (std::fabs(pb.drive.value(0.0)) > 1e-12 ||
            std::fabs(pb.drive.rate(0.0)) > 1e-12)
            throw std::invalid_argument("CouetteProblem: drive must start from rest");
    }
}

/// Shear wave slowness c = sqrt(density / kappa).
inline double wave_slowness(const CouetteProblem& pb) {
    return std::sqrt(pb.density / pb.law.kappa);
}

namespace detail {

/// Mode relaxation C_k(s) = E_beta(-(a_k s^{beta/2})^2), beta = 2 - alpha.
inline double couette_mode_kernel(double beta, double ak, double s) {
    return mittag_leffler_neg(beta, ak * ak * std::pow(s, beta));
}

/// Moments of a quadratic Lagrange basis against exp(i w xi) on [0,1].
inline std::array<std::complex<double>, 3> filon_weights(double w) {
    using cplx = std::complex<double>;
    cplx m0, m1, m2;
    const cplx iw(0.0, w);
    if (std::fabs(w) < 0.5) {
        cplx pw(1.0, 0.0);
        double fact = 1.0;
        for (int nn = 0; nn < 14; ++nn) {
            if (nn) {
                pw *= iw;
                fact *= nn;
            }
            m0 += pw / (fact * (nn + 1));
            m1 += pw / (fact * (nn + 2));
            m2 += pw / (fact * (nn + 3));
        }
    } else {
        const cplx ex = std::exp(iw);
        m0 = (ex - 1.0) / iw;
        m1 = (ex - m0) / iw;
        m2 = (ex - 2.0 * m1) / iw;
    }
    return {2.0 * m2 - 3.0 * m1 + m0, -4.0 * m2 + 4.0 * m1, 2.0 * m2 - m1};
}

/**
 * @brief int_0^{P H} cos(a s) u(s) ds with u sampled at half-panel spacing.
 *
 * The oscillation is integrated exactly panel by panel; only the quadratic
 * interpolation of u contributes error, so the panel count is independent
 * of the frequency a.
 */
inline double filon_cos(double a, double H, int P, const std::vector<double>& u) {
    const auto w = filon_weights(a * H);
    const std::complex<double> rot = std::polar(1.0, a * H);
    std::complex<double> phase(1.0, 0.0);
    double total = 0.0;
    for (int i = 0; i < P; ++i) {
        const std::complex<double> val =
            w[0] * u[2 * i] + w[1] * u[2 * i + 1] + w[2] * u[2 * i + 2];
        total += (phase * val).real();
        phase *= rot;
    }
    return H * total;
}

/// Duhamel integral of one mode kernel against the drive rate.
inline double mode_duhamel(double beta, double ak, double t,
                           const std::function<double(double)>& rate) {
    if (beta == 1.0) {
        const double lam = ak * ak;
        const double cut = std::min(t, 40.0 / lam);
        return integrate_panels(
            [&](double s) { return std::exp(-lam * s) * rate(t - s); }, 0.0, cut, 32);
    }
    const double freq = std::pow(ak, 2.0 / beta);
    const double osc = freq * std::sin(M_PI / beta);
    const double decay = -freq * std::cos(M_PI / beta);
    const double s_osc = decay > 0.0 ? std::min(t, 45.0 / decay) : t;
    const int panels =
        std::min(4000, static_cast<int>(osc * s_osc / M_PI) + 8);
    double ik = integrate_panels(
        [&](double s) { return couette_mode_kernel(beta, ak, s) * rate(t - s); }, 0.0,
        s_osc, panels);
    if (s_osc < t)
        ik += adaptive_simpson(
            [&](double s) { return couette_mode_kernel(beta, ak, s) * rate(t - s); },
            s_osc, t, 1e-12);
    return ik;
}

inline void check_gap_point(const CouetteProblem& pb, double x, double t) {
    if (!(x >= 0.0 && x <= pb.gap))
        throw std::invalid_argument("shear layer: x outside the gap");
    if (!(t >= 0.0)) throw std::invalid_argument("shear layer: negative time");
}

}  // namespace detail

/**
 * @brief Influence kernel K(x,t): response to a unit step of the driven wall.
 *
 * K(x,0) = 0 inside the gap, K -> x/gap as the modes relax, and the driven
 * wall value is identically 1.
 */
inline double kernel_value(const CouetteProblem& pb, double x, double t) {
    validate_couette(pb, false);
    detail::check_gap_point(pb, x, t);
    const double l = pb.gap;
    const double c = wave_slowness(pb);
    const double beta = 2.0 - pb.law.order.alpha;
    double sum = 0.0;
    for (int k = pb.modes; k >= 1; --k) {
        const double ak = k * M_PI / (c * l);
        const double ck = detail::couette_mode_kernel(beta, ak, t);
        sum += ((k % 2) ? -1.0 : 1.0) / k * std::sin(k * M_PI * x / l) * ck;
    }
    return x / l + 2.0 / M_PI * sum;
}

/**
 * @brief Displacement under a rest-start drive, by mode superposition:
 *        y = (x/l) phi(t) + (2/pi) sum_k ((-1)^k/k) sin(k pi x / l) I_k,
 *        I_k = int_0^t C_k(s) phi'(t-s) ds.
 */
inline double displacement(const CouetteProblem& pb, double x, double t) {
    validate_couette(pb, true);
    detail::check_gap_point(pb, x, t);
    if (t == 0.0) return 0.0;
    const double l = pb.gap;
    const double c = wave_slowness(pb);
    const double alpha = pb.law.order.alpha;
    const double beta = 2.0 - alpha;
    double sum = 0.0;
    if (alpha == 0.0) {
        // purely elastic modes oscillate forever: share the drive samples
        // across modes and integrate the oscillation exactly
        const int pn = std::min(1024, std::max(64, static_cast<int>(8.0 * t) + 16));
        const double h = t / pn;
        std::vector<double> u(2 * pn + 1);
        for (int j = 0; j <= 2 * pn; ++j) u[j] = pb.drive.rate(t - 0.5 * h * j);
        for (int k = 1; k <= pb.modes; ++k) {
            const double ak = k * M_PI / (c * l);
            const double ik = detail::filon_cos(ak, h, pn, u);
            sum += ((k % 2) ? -1.0 : 1.0) / k * std::sin(k * M_PI * x / l) * ik;
        }
    } else {
        for (int k = 1; k <= pb.modes; ++k) {
            const double ak = k * M_PI / (c * l);
            const double ik = detail::mode_duhamel(beta, ak, t, pb.drive.rate);
            sum += ((k % 2) ? -1.0 : 1.0) / k * std::sin(k * M_PI * x / l) * ik;
        }
    }
    return x / l * pb.drive.value(t) + 2.0 / M_PI * sum;
}

namespace detail {

/**
 * @brief Algebraically damped wave arrival h_a(t) =
 *        t^{m-1} sum_j (-xi)^j / (j! Gamma(m - j m)), xi = a t^{-m}.
 *
 * For large xi the sum cancels catastrophically while its value decays like
 * exp(-q xi^{1/(1-m)}); past the balance point the truncated value 0 is more
 * accurate than the summed one, so the arrival is dropped.
 */
inline double wright_decay(double m, double a, double t, int max_terms) {
    const double xi = a * std::pow(t, -m);
    const double q = (1.0 - m) * std::pow(m, m / (1.0 - m));
    const double grow = 1.0 / (1.0 - m);
    if (q * std::pow(xi, grow) > 18.0) return 0.0;
    const long double pil = std::numbers::pi_v<long double>;
    long double sum = recip_gamma(m);
    const long double lnxi = std::log(static_cast<long double>(xi));
    // the summed terms peak near (xi m^m)^{1/(1-m)}, later than the bare
    // power-over-factorial part suggests
    const double jstar = std::pow(xi * std::pow(m, m), grow);
    int small_streak = 0;
    for (int j = 1; j <= max_terms; ++j) {
        // 1/Gamma(m - j m) by reflection, kept in logs: the magnitudes
        // overflow long before the summed products do
        const long double y = m - static_cast<long double>(j) * m;
        long double add = 0.0L;
        if (y != std::floor(y)) {
            const long double s = std::sin(pil * y);
            const long double ln_mag =
                j * lnxi - std::lgamma(static_cast<long double>(j) + 1.0L) +
                std::log(std::fabs(s)) + std::lgamma(1.0L - y) - std::log(pil);
            add = std::exp(ln_mag);
            if (j % 2) add = -add;
            if (s < 0.0L) add = -add;
        }
        sum += add;
        small_streak = std::fabs(add) < 1e-22L ? small_streak + 1 : 0;
        if (j > jstar + 8.0 && small_streak >= 3) break;
    }
    return std::pow(t, m - 1.0) * static_cast<double>(sum);
}

}  // namespace detail

/// Truncation depths of the wall stress series.
struct StressSeriesTerms {
    int images = 8;
    int wright_terms = 320;
};

/**
 * @brief Stress on the driven wall under uniform rotation phi = speed * t,
 *        for the order-1/2 law:  kappa c v [t^{m-1}/Gamma(m) + 2 sum_k h_k],
 *        m = 3/4, with arrivals at image distances (2k+2) c l.
 *
 * The t -> 0 leading term is the half-space response; each h_k is one
 * reflection off the fixed wall.
 */
inline double boundary_stress_uniform(const CouetteProblem& pb, double speed, double t,
                                      StressSeriesTerms terms = {}) {
    validate_couette(pb, false);
    if (pb.law.order.alpha != 0.5)
        throw std::invalid_argument(
            "boundary_stress_uniform: drive stress series requires order 1/2");
    if (!(t > 0.0))
        throw std::invalid_argument("boundary_stress_uniform: t must be positive");
    if (terms.images < 0 || terms.wright_terms < 8)
        throw std::invalid_argument("boundary_stress_uniform: bad truncation depths");
    const double m = 0.75;
    const double c = wave_slowness(pb);
    const double l = pb.gap;
    double sum = std::pow(t, m - 1.0) * recip_gamma(m);
    for (int k = 0; k < terms.images; ++k) {
        const double a = (2.0 * k + 2.0) * c * l;
        sum += 2.0 * detail::wright_decay(m, a, t, terms.wright_terms);
    }
    return pb.law.kappa * c * speed * sum;
}

/**
 * @brief Displacement for an arbitrary two-measure law, via the transform
 *        solution Phi(p) sh(A p x) / sh(A p l) inverted numerically.
 *
 * drive_transform must be the Laplace transform of the wall motion.
 */
inline double displacement_general_law(
    const DerivativeMeasure& on_stress, const DerivativeMeasure& on_strain,
    double density, double gap,
    const std::function<std::complex<double>(std::complex<double>)>& drive_transform,
    double x, double t, int terms = 24, double tol = 1e-9) {
    using cplx = std::complex<double>;
    validate_measure(on_stress);
    validate_measure(on_strain);
    if (!(density > 0.0))
        throw std::invalid_argument("displacement_general_law: density <= 0");
    if (!(gap > 0.0)) throw std::invalid_argument("displacement_general_law: gap <= 0");
    if (!(x >= 0.0 && x <= gap))
        throw std::invalid_argument("displacement_general_law: x outside the gap");
    if (!(t >= 0.0)) throw std::invalid_argument("displacement_general_law: t < 0");
    if (!drive_transform)
        throw std::invalid_argument("displacement_general_law: missing drive transform");
    if (t == 0.0) return 0.0;
    return laplace_invert(
        [&](cplx p) -> cplx {
            cplx w = transfer_scale(on_stress, on_strain, density, p) * p;
            if (w.real() < 0.0) w = -w;  // the ratio below is even in w
            const cplx num = 1.0 - std::exp(-2.0 * w * x);
            const cplx den = 1.0 - std::exp(-2.0 * w * gap);
            return drive_transform(p) * std::exp(w * (x - gap)) * num / den;
        },
        t, terms, tol);
}

}  // namespace mechkit
