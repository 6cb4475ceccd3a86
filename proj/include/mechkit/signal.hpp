#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mechkit {

/**
 * @brief Uniformly sampled time series.
 *
 * Carries the grid step and the sample values; `origin` is the time of the
 * first sample.  Input and output type of every grid-based fractional
 * derivative and Duhamel operation.
 */
struct SampledSignal {
    double step = 0.0;
    std::vector<double> values;
    double origin = 0.0;

    double time_at(std::size_t i) const { return origin + step * static_cast<double>(i); }
    std::size_t size() const { return values.size(); }
};

inline void validate_signal(const SampledSignal& s) {
    if (!(s.step > 0.0))
        throw std::invalid_argument("SampledSignal: step must be positive");
    if (s.values.size() < 2)
        throw std::invalid_argument("SampledSignal: need at least two samples");
    for (double v : s.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("SampledSignal: non-finite sample");
}

/// Derivative order alpha restricted to [0, 1]; both endpoints are exact
/// classical limits.
struct FractionalOrder {
    double alpha = 0.0;
};

inline void validate_order(FractionalOrder o) {
    if (!(o.alpha >= 0.0 && o.alpha <= 1.0))
        throw std::invalid_argument("FractionalOrder: alpha must lie in [0,1]");
}

}  // namespace mechkit
