#pragma once

#include <cmath>
#include <vector>

#include "signal.hpp"

namespace mechkit {

/**
 * @brief Memory-integral fractional derivative of a sampled signal, order
 *        alpha in [0,1], quiescent start at the first sample.
 *
 * alpha = 0 returns the signal relative to its initial value (exact identity
 * for quiescent-start signals, and constants map to zero uniformly in alpha);
 * alpha = 1 is a second-order finite difference; interior orders use the
 * first-order Grunwald-Letnikov weights applied to (f - f(0)).
 */
inline SampledSignal caputo_grid(const SampledSignal& signal, FractionalOrder order) {
    validate_signal(signal);
    validate_order(order);
    const double alpha = order.alpha;
    const std::size_t n = signal.values.size();
    SampledSignal out;
    out.step = signal.step;
    out.origin = signal.origin;
    out.values.resize(n);

    const std::vector<double>& f = signal.values;
    if (alpha == 0.0) {
        for (std::size_t i = 0; i < n; ++i) out.values[i] = f[i] - f[0];
        return out;
    }
    if (alpha == 1.0) {
        const double h = signal.step;
        out.values[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2 < n ? 2 : 1]) / (2.0 * h);
        if (n == 2) out.values[0] = (f[1] - f[0]) / h;
        for (std::size_t i = 1; i + 1 < n; ++i)
            out.values[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        out.values[n - 1] = n >= 3
            ? (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
            : (f[n - 1] - f[n - 2]) / h;
        return out;
    }

    // Grunwald-Letnikov weights g_0 = 1, g_j = g_{j-1} (1 - (alpha+1)/j)
    std::vector<double> g(n);
    g[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j)
        g[j] = g[j - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(j));
    const double scale = std::pow(signal.step, -alpha);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += g[j] * (f[i - j] - f[0]);
        out.values[i] = scale * acc;
    }
    return out;
}

/**
 * @brief Whole-line (steady-state) fractional derivative of a sine:
 *        amplitude * omega^alpha * sin(omega t + alpha pi/2).
 *
 * The grid operator above converges to this rule once the start-up
 * transient of the finite lower limit has decayed.
 */
inline double liouville_harmonic(double amplitude, double omega, FractionalOrder order,
                                 double t) {
    validate_order(order);
    if (!(omega > 0.0))
        throw std::invalid_argument("liouville_harmonic: omega must be positive");
    return amplitude * std::pow(omega, order.alpha) *
           std::sin(omega * t + order.alpha * M_PI / 2.0);
}

}  // namespace mechkit
