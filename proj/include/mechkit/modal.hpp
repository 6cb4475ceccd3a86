#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mechkit/quadrature.hpp"

namespace mechkit {

// Transverse motion of a uniform string with internal viscosity and external
// friction:  rho u_tt = M u_xx - eta u_txx ... folded per sine mode into
//   rho q'' + (kappa_m eta + H) q' + kappa_m M q = w_m(t),
// kappa_m = (m pi / l)^2.  M bundles tension plus any elastic reinforcement.
struct StringModel {
    double length = 1.0;
    double density = 1.0;
    double viscosity = 0.0;
    double stiffness = 1.0;
    double ext_friction = 0.0;
};

inline void validate_string(const StringModel& s) {
    if (!(s.length > 0.0) || !(s.density > 0.0) || !(s.stiffness > 0.0))
        throw std::invalid_argument("string model: length, density, stiffness must be positive");
    if (s.viscosity < 0.0 || s.ext_friction < 0.0)
        throw std::invalid_argument("string model: damping coefficients must be nonnegative");
}

struct ModalRoot {
    int mode = 0;
    std::complex<double> q1;
    std::complex<double> q2;
    double sigma = 0.0;            // decay rate, -Re of either root
    std::complex<double> nu;       // half separation, imaginary when oscillatory
};

inline double mode_kappa(const StringModel& s, int m) {
    const double k = m * M_PI / s.length;
    return k * k;
}

inline ModalRoot modal_roots(const StringModel& s, int m) {
    validate_string(s);
    if (m < 1) throw std::invalid_argument("mode index starts at 1");
    const double kappa = mode_kappa(s, m);
    const double sigma = (kappa * s.viscosity + s.ext_friction) / (2.0 * s.density);
    const double disc = sigma * sigma - kappa * s.stiffness / s.density;
    if (disc >= 0.0) {
        // Slow root through the product to dodge subtractive cancellation.
        const double nu = std::sqrt(disc);
        const double fast = sigma + nu;
        const double slow = (fast > 0.0) ? kappa * s.stiffness / (s.density * fast) : 0.0;
        return {m, -slow, -fast, sigma, nu};
    }
    const std::complex<double> nu(0.0, std::sqrt(-disc));
    return {m, -sigma + nu, -sigma - nu, sigma, nu};
}

// Decay rate per mode.  Grows like m^2 through the internal viscosity term and
// saturates to a constant H/(2 rho) when eta = 0.
inline std::vector<double> decrement_spectrum(const StringModel& s, int count) {
    validate_string(s);
    if (count < 2) throw std::invalid_argument("a spectrum needs at least two modes");
    std::vector<double> out;
    out.reserve(count);
    for (int m = 1; m <= count; ++m) out.push_back(modal_roots(s, m).sigma);
    return out;
}

namespace detail {

inline double sine_coefficient(const std::function<double(double)>& f, double l, int m) {
    const int panels = 1 + m / 6;
    const double val = integrate_panels(
        [&](double x) { return f(x) * std::sin(m * M_PI * x / l); }, 0.0, l, panels,
        gauss64());
    return 2.0 / l * val;
}

constexpr double kDegenerateSplit = 1e-9;

}  // namespace detail

// Free motion from initial displacement and velocity profiles, evaluated at
// one space-time point.  Mode amplitudes solve C' + C'' = A_m,
// q1 C' + q2 C'' = B_m; a repeated root switches to (C + D t) e^{q t}.
inline double free_response(const StringModel& s,
                            const std::function<double(double)>& shape0,
                            const std::function<double(double)>& speed0, double x,
                            double t, int modes) {
    validate_string(s);
    if (modes < 1) throw std::invalid_argument("need at least one mode");
    if (x < 0.0 || x > s.length) throw std::invalid_argument("x outside the string");
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    double sum = 0.0;
    for (int m = 1; m <= modes; ++m) {
        const double A = detail::sine_coefficient(shape0, s.length, m);
        const double B = detail::sine_coefficient(speed0, s.length, m);
        const ModalRoot r = modal_roots(s, m);
        double qt;
        if (std::abs(r.nu) < detail::kDegenerateSplit * (r.sigma + 1.0)) {
            const double q = -r.sigma;
            qt = (A + (B - q * A) * t) * std::exp(q * t);
        } else {
            const std::complex<double> c2 = (B - r.q1 * A) / (r.q2 - r.q1);
            const std::complex<double> c1 = std::complex<double>(A) - c2;
            qt = (c1 * std::exp(r.q1 * t) + c2 * std::exp(r.q2 * t)).real();
        }
        sum += qt * std::sin(m * M_PI * x / s.length);
    }
    return sum;
}

// Forced motion from rest.  drive[m-1] is the sine-series component of the
// load at mode m (missing entries mean an unforced mode); each mode gets a
// Duhamel convolution with its impulse response.
inline double forced_response(const StringModel& s,
                              const std::vector<std::function<double(double)>>& drive,
                              double x, double t, int modes) {
    validate_string(s);
    if (modes < 1) throw std::invalid_argument("need at least one mode");
    if (x < 0.0 || x > s.length) throw std::invalid_argument("x outside the string");
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    if (t == 0.0) return 0.0;
    double sum = 0.0;
    const int active = std::min<int>(modes, static_cast<int>(drive.size()));
    for (int m = 1; m <= active; ++m) {
        if (!drive[m - 1]) continue;
        const ModalRoot r = modal_roots(s, m);
        const bool repeated = std::abs(r.nu) < detail::kDegenerateSplit * (r.sigma + 1.0);
        auto impulse = [&](double dt) {
            if (repeated) return dt * std::exp(-r.sigma * dt) / s.density;
            const std::complex<double> h =
                (std::exp(r.q1 * dt) - std::exp(r.q2 * dt)) /
                (s.density * (r.q1 - r.q2));
            return h.real();
        };
        const auto& w = drive[m - 1];
        auto integrand = [&](double sarg) { return w(sarg) * impulse(t - sarg); };
        const double phase = (std::abs(r.nu.imag()) + r.sigma) * t;
        const int panels = std::min(4000, 8 + static_cast<int>(phase / M_PI) * 2);
        double qm = integrate_panels(integrand, 0.0, t, panels, gauss8());
        sum += qm * std::sin(m * M_PI * x / s.length);
    }
    return sum;
}

// Static sag of a heavy string clamped level at both ends.
inline double heavy_string_equilibrium(const StringModel& s, double g, double x) {
    validate_string(s);
    if (x < 0.0 || x > s.length) throw std::invalid_argument("x outside the string");
    return -s.density * g * x * (s.length - x) / (2.0 * s.stiffness);
}

struct StringKnowns {
    double density = 1.0;
    double length = 1.0;
    double tension = 1.0;
    double ext_friction = 0.0;
};

struct IdentifiedViscoelastic {
    double viscosity = 0.0;
    double reinforcement = 0.0;    // stiffness in excess of the applied tension
    bool physical = true;
};

// Inverts the first-mode decay rate and ring frequency for the two material
// parameters the direct problem cannot separate from tension alone.
inline IdentifiedViscoelastic identify_viscoelastic(double sigma1, double nu1,
                                                    const StringKnowns& k) {
    if (!(k.density > 0.0) || !(k.length > 0.0))
        throw std::invalid_argument("identification needs positive density and length");
    if (nu1 <= 0.0) throw std::invalid_argument("ring frequency must be positive");
    const double l2pi2 = k.length * k.length / (M_PI * M_PI);
    IdentifiedViscoelastic out;
    out.viscosity = (2.0 * k.density * sigma1 - k.ext_friction) * l2pi2;
    out.reinforcement =
        k.density * k.length * k.length * (nu1 * nu1 + sigma1 * sigma1) / (M_PI * M_PI) -
        k.tension;
    out.physical = out.viscosity >= 0.0 && out.reinforcement >= 0.0;
    return out;
}

// Longitudinal vibration of a shaft carrying an end mass: eigenvalues solve
// s = kt * cot(s l) with kt = delta^4 rho / (rho0 d).  The left side minus the
// right is strictly increasing between poles, so each branch holds one root.
inline std::vector<double> torsional_eigenvalues(double delta, double rho, double rho0,
                                                 double d, double l, int count) {
    if (!(delta > 0.0) || !(rho > 0.0) || !(rho0 > 0.0) || !(d > 0.0) || !(l > 0.0))
        throw std::invalid_argument("torsional system needs positive parameters");
    if (count < 1) throw std::invalid_argument("need at least one eigenvalue");
    const double kt = delta * delta * delta * delta * rho / (rho0 * d);
    const double eps = 1e-9 * M_PI / l;
    auto g = [&](double sv) { return sv - kt / std::tan(sv * l); };
    std::vector<double> out;
    out.reserve(count);
    for (int k = 1; k <= count; ++k) {
        const double lo = (k - 1) * M_PI / l + eps;
        const double hi = k * M_PI / l - eps;
        out.push_back(bisect(g, lo, hi, 0.0));
    }
    return out;
}

struct MembraneMode {
    int m = 1;
    int n = 1;
    double lambda = 0.0;
};

// Eigenvalues of a square membrane with fixed edge, ascending; degenerate
// pairs (m,n) vs (n,m) stay as separate entries.
inline std::vector<MembraneMode> membrane_rect_modes(double a, int count) {
    if (!(a > 0.0)) throw std::invalid_argument("membrane side must be positive");
    if (count < 1) throw std::invalid_argument("need at least one mode");
    const double scale = M_PI * M_PI / (a * a);
    int K = static_cast<int>(std::sqrt(4.0 * count / M_PI)) + 3;
    std::vector<MembraneMode> all;
    for (;;) {
        all.clear();
        all.reserve(static_cast<std::size_t>(K) * K);
        for (int m = 1; m <= K; ++m)
            for (int n = 1; n <= K; ++n)
                all.push_back({m, n, (static_cast<double>(m) * m + static_cast<double>(n) * n) * scale});
        std::sort(all.begin(), all.end(), [](const MembraneMode& x, const MembraneMode& y) {
            if (x.lambda != y.lambda) return x.lambda < y.lambda;
            if (x.m != y.m) return x.m < y.m;
            return x.n < y.n;
        });
        if (static_cast<int>(all.size()) >= count &&
            all[count - 1].lambda < ((static_cast<double>(K) + 1) * (K + 1) + 1) * scale)
            break;
        K += 4;
    }
    all.resize(count);
    return all;
}

// String with a relaxing elastic support: per-mode characteristic cubic
//   (rho / r) x^3 + rho x^2 + lam eta x + lam M = 0.
struct RelaxCubicModel {
    double density = 1.0;
    double relax_rate = 1.0;       // r, the support relaxation rate
    double viscosity = 1.0;        // eta
    double stiffness = 1.0;        // M
    double lambda = 1.0;           // spatial eigenvalue of the mode
};

inline void validate_relax_cubic(const RelaxCubicModel& c) {
    if (!(c.density > 0.0) || !(c.relax_rate > 0.0) || !(c.viscosity > 0.0) ||
        !(c.stiffness > 0.0))
        throw std::invalid_argument("relaxing support model needs positive parameters");
    if (c.lambda < 0.0) throw std::invalid_argument("spatial eigenvalue must be nonnegative");
}

namespace detail {

inline std::array<std::complex<double>, 3> cubic_roots(double a3, double a2, double a1,
                                                       double a0) {
    // Cardano on the depressed form, then a Newton polish per root.
    const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const std::complex<double> disc = std::complex<double>(q * q / 4.0 + p * p * p / 27.0);
    const std::complex<double> sq = std::sqrt(disc);
    std::complex<double> u = -q / 2.0 + sq;
    if (std::abs(u) < std::abs(-q / 2.0 - sq)) u = -q / 2.0 - sq;
    u = std::pow(u, 1.0 / 3.0);
    const std::complex<double> omega(-0.5, std::sqrt(3.0) / 2.0);
    std::array<std::complex<double>, 3> roots;
    for (int k = 0; k < 3; ++k) {
        std::complex<double> uk = u;
        for (int j = 0; j < k; ++j) uk *= omega;
        std::complex<double> y =
            (std::abs(uk) > 0.0) ? uk - p / (3.0 * uk) : std::complex<double>(0.0);
        std::complex<double> x = y - b / 3.0;
        for (int it = 0; it < 8; ++it) {
            const std::complex<double> f = ((a3 * x + a2) * x + a1) * x + a0;
            const std::complex<double> fp = (3.0 * a3 * x + 2.0 * a2) * x + a1;
            if (std::abs(fp) == 0.0) break;
            const std::complex<double> step = f / fp;
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        roots[k] = x;
    }
    std::sort(roots.begin(), roots.end(),
              [](const std::complex<double>& l, const std::complex<double>& r) {
                  if (l.real() != r.real()) return l.real() < r.real();
                  return l.imag() < r.imag();
              });
    return roots;
}

}  // namespace detail

inline std::array<std::complex<double>, 3> relaxing_mode_roots(const RelaxCubicModel& c) {
    validate_relax_cubic(c);
    auto roots = detail::cubic_roots(c.density / c.relax_rate, c.density,
                                     c.lambda * c.viscosity, c.lambda * c.stiffness);
    // Tidy roots that are real up to round-off.
    for (auto& x : roots) {
        if (std::abs(x.imag()) < 1e-12 * (1.0 + std::abs(x.real())))
            x = std::complex<double>(x.real(), 0.0);
    }
    return roots;
}

}  // namespace mechkit
