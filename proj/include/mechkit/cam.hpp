#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mechkit {

// Balance quadrant whose scale must read the quantity z uniformly: the load
// is P = F((phi - phi0)/C), and the cam (template) edge enforces equilibrium
// at every deflection phi in [phi1, phi2].
struct QuadrantSpec {
    double sensitivity = 1.0;    // scale units per radian, nonzero
    double arm = 1.0;            // beam pivot-to-centroid distance
    double weight = 1.0;         // beam weight
    double phi0 = 0.0;           // deflection at scale zero
    double phi1 = 0.0;
    double phi2 = 1.0;
    std::function<double(double)> calibration;         // F
    std::function<double(double)> calibration_rate;    // F'
};

struct ProfilePoint {
    double phi = 0.0;
    double x = 0.0;
    double y = 0.0;
};

struct CamProfile {
    std::vector<ProfilePoint> samples;
};

inline void validate_quadrant(const QuadrantSpec& spec) {
    if (spec.sensitivity == 0.0)
        throw std::invalid_argument("quadrant: sensitivity must be nonzero");
    if (!(spec.arm > 0.0) || !(spec.weight > 0.0))
        throw std::invalid_argument("quadrant: arm and weight must be positive");
    if (!(spec.phi1 < spec.phi2))
        throw std::invalid_argument("quadrant: need phi1 < phi2");
    if (!spec.calibration || !spec.calibration_rate)
        throw std::invalid_argument("quadrant: calibration and its rate are required");
}

namespace detail {

inline void check_increasing(const std::vector<double>& phis) {
    for (std::size_t i = 1; i < phis.size(); ++i)
        if (!(phis[i] > phis[i - 1]))
            throw std::invalid_argument("profile angles must increase strictly");
}

}  // namespace detail

// Envelope of the equilibrium line family (the singular integral of the
// Clairaut equation): the edge every balance line touches.  Along the curve
// dy/dx = -ctg(phi).
inline CamProfile general_profile(const QuadrantSpec& spec,
                                  const std::vector<double>& phis) {
    validate_quadrant(spec);
    detail::check_increasing(phis);
    const double lg = spec.arm * spec.weight;
    CamProfile out;
    out.samples.reserve(phis.size());
    for (double phi : phis) {
        const double z = (phi - spec.phi0) / spec.sensitivity;
        const double F = spec.calibration(z);
        if (!std::isfinite(F) || F == 0.0)
            throw std::domain_error("calibration vanishes at a requested angle");
        const double Fp = spec.calibration_rate(z);
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        const double common = lg * Fp / (spec.sensitivity * F * F);
        out.samples.push_back({phi, common * s * s, -common * s * c + lg / F});
    }
    return out;
}

// Uniform weight scale: F is the identity, and the quadrant constant
// a = C l G scales the whole curve similarly about the origin.
inline CamProfile weight_profile(double a, const std::vector<double>& phis) {
    if (!(a > 0.0)) throw std::invalid_argument("quadrant constant must be positive");
    detail::check_increasing(phis);
    CamProfile out;
    out.samples.reserve(phis.size());
    for (double phi : phis) {
        if (phi < 0.0)
            throw std::invalid_argument("weight profile: angles must be nonnegative");
        if (phi == 0.0) {
            out.samples.push_back({phi, a, 0.0});
            continue;
        }
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        out.samples.push_back(
            {phi, a * s * s / (phi * phi), a * (phi - s * c) / (phi * phi)});
    }
    return out;
}

// Uniform yarn-number scale: the hyperbolic calibration F(z) = -lambda/z with
// scale zero at phi0 = pi, rewritten in the mirrored angle psi = pi - phi.
// Along the curve dy/dx = +ctg(psi).
inline CamProfile number_profile(double b, const std::vector<double>& psis) {
    if (!(b > 0.0)) throw std::invalid_argument("quadrant constant must be positive");
    detail::check_increasing(psis);
    CamProfile out;
    out.samples.reserve(psis.size());
    constexpr double pi = 3.14159265358979323846;
    for (double psi : psis) {
        if (psi < 0.0 || psi > pi)
            throw std::invalid_argument("number profile: angles must lie in [0, pi]");
        const double s = std::sin(psi);
        const double c = std::cos(psi);
        out.samples.push_back({psi, b * s * s, b * (psi + s * c)});
    }
    return out;
}

// Heaviest admissible ribbon keeping the reading error below E percent when
// the logarithmic derivative of the scale function is bounded by M and the
// ribbon's lever-arm ratio by sigma_star.
inline double ribbon_width_bound(double E_percent, double M, double sigma_star) {
    if (!(E_percent > 0.0) || !(M > 0.0) || !(sigma_star > 0.0))
        throw std::invalid_argument("ribbon bound: all inputs must be positive");
    return E_percent / (100.0 * M * sigma_star);
}

}  // namespace mechkit
