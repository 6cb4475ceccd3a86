#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mechkit/fractional.hpp"
#include "mechkit/signal.hpp"

namespace mechkit {

/// Single-exponent fractional stress-strain law sigma = kappa * d^alpha eps.
struct FractionalLaw {
    double kappa = 1.0;
    FractionalOrder order;
};

inline void validate_law(const FractionalLaw& law) {
    if (!(law.kappa > 0.0))
        throw std::invalid_argument("FractionalLaw: kappa must be positive");
    validate_order(law.order);
}

/// One term of a derivative measure: weight attached to a fractional order.
struct MeasureAtom {
    double order = 0.0;
    double weight = 1.0;
};

/**
 * @brief Finite weighted sum of fractional derivative operators.
 *
 * Applied to a signal f it means sum_i w_i d^{alpha_i} f.  A pair of
 * measures, one acting on stress and one on strain, expresses the whole
 * family of linear hereditary laws with power-law kernels.
 */
struct DerivativeMeasure {
    std::vector<MeasureAtom> atoms;
};

inline void validate_measure(const DerivativeMeasure& m) {
    if (m.atoms.empty())
        throw std::invalid_argument("DerivativeMeasure: no atoms");
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        validate_order({m.atoms[i].order});
        if (m.atoms[i].weight == 0.0)
            throw std::invalid_argument("DerivativeMeasure: zero weight atom");
        for (std::size_t j = 0; j < i; ++j)
            if (m.atoms[j].order == m.atoms[i].order)
                throw std::invalid_argument("DerivativeMeasure: duplicate order");
    }
}

inline SampledSignal stress_from_strain(const FractionalLaw& law,
                                        const SampledSignal& strain) {
    validate_law(law);
    SampledSignal out = caputo_grid(strain, law.order);
    for (double& v : out.values) v *= law.kappa;
    return out;
}

/**
 * @brief Pointwise defect of a two-measure hereditary law on sampled data.
 *
 * Returns sum_i w_i^e d^{alpha_i} sigma - sum_j w_j^s d^{alpha_j} eps on the
 * common grid.  Zero (up to grid error) means the records satisfy the law.
 */
inline SampledSignal measure_law_residual(const DerivativeMeasure& on_stress,
                                          const DerivativeMeasure& on_strain,
                                          const SampledSignal& stress,
                                          const SampledSignal& strain) {
    validate_measure(on_stress);
    validate_measure(on_strain);
    validate_signal(stress);
    validate_signal(strain);
    if (stress.step != strain.step || stress.values.size() != strain.values.size() ||
        stress.origin != strain.origin)
        throw std::invalid_argument("measure_law_residual: grids do not match");

    SampledSignal out;
    out.step = stress.step;
    out.origin = stress.origin;
    out.values.assign(stress.values.size(), 0.0);
    for (const auto& atom : on_stress.atoms) {
        auto d = caputo_grid(stress, {atom.order});
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += atom.weight * d.values[i];
    }
    for (const auto& atom : on_strain.atoms) {
        auto d = caputo_grid(strain, {atom.order});
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] -= atom.weight * d.values[i];
    }
    return out;
}

/// Symbol of a derivative measure at the transform variable p.
inline std::complex<double> measure_symbol(const DerivativeMeasure& m,
                                           std::complex<double> p) {
    std::complex<double> j(0.0, 0.0);
    for (const auto& atom : m.atoms) j += atom.weight * std::pow(p, atom.order);
    return j;
}

/**
 * @brief Complex wave slowness A(p) = sqrt(rho * J_e(p) / J_s(p)).
 *
 * J_e and J_s are the transform symbols of the stress and strain measures;
 * powers take the principal branch, so p must stay off the negative real
 * axis.  A vanishing strain symbol is a genuine singularity of the law and
 * is reported as such rather than returned as infinity.
 */
inline std::complex<double> transfer_scale(const DerivativeMeasure& on_stress,
                                           const DerivativeMeasure& on_strain,
                                           double density,
                                           std::complex<double> p) {
    validate_measure(on_stress);
    validate_measure(on_strain);
    if (!(density > 0.0))
        throw std::invalid_argument("transfer_scale: density must be positive");
    if (p.imag() == 0.0 && p.real() < 0.0)
        throw std::invalid_argument(
            "transfer_scale: branch cut on the negative real axis");
    const std::complex<double> je = measure_symbol(on_stress, p);
    const std::complex<double> js = measure_symbol(on_strain, p);
    if (std::abs(js) < 1e-300)
        throw std::domain_error("transfer_scale: strain symbol vanishes at p");
    return std::sqrt(density * je / js);
}

/// Pair of elastic and viscous Lame moduli.
struct LameModuli {
    double lambda_el = 0.0;
    double mu_el = 0.0;
    double lambda_vis = 0.0;
    double mu_vis = 0.0;
};

/// Symmetric small-strain state with rates and a hydrostatic pressure.
struct SmallStrainState {
    Eigen::Matrix3d def_u = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d def_udot = Eigen::Matrix3d::Zero();
    double pressure = 0.0;
    LameModuli lame;
};

/**
 * @brief Total stress of a compressible viscous-elastic medium:
 *        2 mu' Def u + lambda' theta' I + 2 mu'' Def u' + (lambda'' theta'' - p) I.
 */
inline Eigen::Matrix3d combined_stress(const SmallStrainState& state) {
    const auto check_sym = [](const Eigen::Matrix3d& d, const char* which) {
        const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
        if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument(std::string("combined_stress: ") + which +
                                        " is not symmetric");
    };
    check_sym(state.def_u, "def_u");
    check_sym(state.def_udot, "def_udot");
    const double theta_e = state.def_u.trace();
    const double theta_v = state.def_udot.trace();
    Eigen::Matrix3d s = 2.0 * state.lame.mu_el * state.def_u +
                        2.0 * state.lame.mu_vis * state.def_udot;
    s += (state.lame.lambda_el * theta_e + state.lame.lambda_vis * theta_v -
          state.pressure) *
         Eigen::Matrix3d::Identity();
    return s;
}

}  // namespace mechkit
