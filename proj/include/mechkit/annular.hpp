#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mechkit/constitutive.hpp"
#include "mechkit/fractional.hpp"

namespace mechkit {

/// Thin annular layer between coaxial cylinders of radii r1 < r2.
struct BearingGeometry {
    double r1 = 1.0;
    double r2 = 1.1;
    FractionalLaw law;
};

struct BearingValidation {
    bool thin_gap = true;  // false when gap/r1 exceeds 0.1
};

inline BearingValidation validate_bearing(const BearingGeometry& g) {
    if (!(g.r1 > 0.0 && g.r2 > g.r1))
        throw std::invalid_argument("BearingGeometry: need 0 < r1 < r2");
    validate_law(g.law);
    return {(g.r2 - g.r1) / g.r1 <= 0.1};
}

/**
 * @brief Rotation angle across the thin gap when the walls turn by phi1
 *        and phi2: linear interpolation of the moment-free shear field.
 */
inline double thin_gap_angle(const BearingGeometry& g, double r, double phi1,
                             double phi2) {
    validate_bearing(g);
    if (!(r >= g.r1 && r <= g.r2))
        throw std::invalid_argument("thin_gap_angle: r outside the gap");
    const double d0 = g.r2 - g.r1;
    return (g.r1 / r) * ((g.r2 - r) / d0) * phi1 + (g.r2 / r) * ((r - g.r1) / d0) * phi2;
}

/// Shear strain in the gap produced by a relative wall rotation psi.
inline double gap_strain(const BearingGeometry& g, double r, double psi) {
    validate_bearing(g);
    if (!(r >= g.r1 && r <= g.r2))
        throw std::invalid_argument("gap_strain: r outside the gap");
    return g.r1 * g.r2 * psi / ((g.r2 - g.r1) * r);
}

/// One sinusoidal component of a relative wall rotation.
struct RotationHarmonic {
    double amplitude = 0.0;
    double omega = 1.0;
};

enum class Wall { inner, outer };

/**
 * @brief Steady-state shear stress on a wall for a sum of rotation
 *        harmonics, by the fractional harmonic rule applied per component.
 *
 * The stress ratio between the walls is exactly r2/r1.
 */
inline double wall_stress_harmonic(const BearingGeometry& g,
                                   const std::vector<RotationHarmonic>& harmonics,
                                   double t, Wall wall) {
    validate_bearing(g);
    const double d0 = g.r2 - g.r1;
    const double r_other = wall == Wall::inner ? g.r2 : g.r1;
    const double alpha = g.law.order.alpha;
    double sum = 0.0;
    for (const auto& h : harmonics) {
        if (!(h.omega > 0.0))
            throw std::invalid_argument("wall_stress_harmonic: omega must be positive");
        sum += liouville_harmonic(h.amplitude, h.omega, {alpha}, t);
    }
    return g.law.kappa * r_other / d0 * sum;
}

}  // namespace mechkit
