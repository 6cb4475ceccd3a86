#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mechkit/quadrature.hpp"

namespace mechkit {

// Stationary drafting zone with two-speed fiber kinetics: fibers enter at v0,
// leave at v1 = B v0, and slip at both nips (alpha at the back, beta at the
// front), so the observable speeds span [v(0), v(1)] strictly inside [v0, v1].
struct DraftZone {
    double v0 = 1.0;
    double B = 2.0;
    double alpha = 0.1;
    double beta = 0.1;
    double n0 = 1.0;
    double length = 1.0;
};

struct ZoneValidation {
    bool slip_sum_ok = true;    // alpha + beta < 1; worked cases may violate it
};

inline ZoneValidation validate_zone(const DraftZone& z) {
    if (!(z.v0 > 0.0) || !(z.n0 > 0.0) || !(z.length > 0.0))
        throw std::invalid_argument("draft zone: v0, n0, length must be positive");
    if (!(z.B > 1.0)) throw std::invalid_argument("draft zone: limit draft B must exceed 1");
    if (z.alpha < 0.0 || z.alpha >= 1.0 || z.beta < 0.0 || z.beta >= 1.0)
        throw std::invalid_argument("draft zone: slip coefficients must lie in [0, 1)");
    return {z.alpha + z.beta < 1.0};
}

struct EndpointSpeeds {
    double v_in = 0.0;
    double v_out = 0.0;
    double b_actual = 0.0;    // realized draft, always below the limit B
};

inline EndpointSpeeds endpoint_speeds(const DraftZone& z) {
    validate_zone(z);
    const double v1 = z.B * z.v0;
    const double vin = z.v0 + (v1 - z.v0) * z.alpha;
    const double vout = v1 - (v1 - z.v0) * z.beta;
    return {vin, vout, vout / vin};
}

// Rate of kinetic-energy exchange between the two fiber families at average
// speed v; vanishes at both family speeds and peaks at their geometric mean.
inline double dissipative(const DraftZone& z, double v) {
    validate_zone(z);
    const double v1 = z.B * z.v0;
    if (v < z.v0 || v > v1)
        throw std::invalid_argument("dissipative function: speed outside [v0, v1]");
    const double q = z.n0 * z.v0;
    return 0.5 * q * (v1 - v) * (v - z.v0) / v;
}

inline double sigma_max(double B) {
    if (!(B >= 1.0)) throw std::invalid_argument("draft ratio must be at least 1");
    return (B + 1.0) * (B + 1.0) / (4.0 * B);
}

struct DraftLength {
    double value = 0.0;
    bool log_domain_ok = true;    // false when the closed form leaves its domain
};

inline DraftLength draft_length_S(double B, double alpha, double beta) {
    if (!(B > 1.0) || !(alpha > 0.0) || alpha >= 1.0 || !(beta > 0.0) || beta >= 1.0)
        throw std::invalid_argument("draft length: need B > 1 and slips in (0, 1)");
    const double lnQ = B * std::log1p(-alpha) + std::log1p(-beta) - std::log(alpha) -
                       B * std::log(beta);
    return {(B - 1.0) / (2.0 * lnQ), lnQ > 0.0};
}

// Closed-form stationary speed curve and its inverse on the unit-length zone.
class VelocityProfile {
public:
    explicit VelocityProfile(const DraftZone& z) : zone_(z) {
        validate_zone(z);
        if (!(z.alpha > 0.0) || !(z.beta > 0.0))
            throw std::invalid_argument("velocity profile: needs strictly positive slip");
        v1_ = z.B * z.v0;
        const auto ends = endpoint_speeds(z);
        va_ = ends.v_in;
        vb_ = ends.v_out;
        ln_p_ = log_ratio(va_);
        ln_q_ = B() * std::log1p(-z.alpha) + std::log1p(-z.beta) - std::log(z.alpha) -
                B() * std::log(z.beta);
    }

    double x_of_v(double v) const {
        if (v == va_) return 0.0;
        if (v == vb_) return 1.0;
        if (v < va_ || v > vb_)
            throw std::invalid_argument("speed outside the observable range (v(0), v(1))");
        return (log_ratio(v) - ln_p_) / ln_q_;
    }

    double v_of_x(double x) const {
        if (x == 0.0) return va_;
        if (x == 1.0) return vb_;
        if (x < 0.0 || x > 1.0)
            throw std::invalid_argument("position outside the zone [0, 1]");
        return bisect([&](double v) { return x_of_v(v) - x; }, va_, vb_, 1e-12);
    }

    double entry_speed() const { return va_; }
    double exit_speed() const { return vb_; }

private:
    double B() const { return zone_.B; }
    double log_ratio(double v) const {
        return std::log(v - zone_.v0) - B() * std::log(v1_ - v);
    }
    DraftZone zone_;
    double v1_ = 0.0, va_ = 0.0, vb_ = 0.0, ln_p_ = 0.0, ln_q_ = 0.0;
};

struct FiberCounts {
    double n = 0.0;
    double n_slow = 0.0;
    double n_fast = 0.0;
};

inline FiberCounts fiber_counts(const DraftZone& z, double v) {
    const auto ends = endpoint_speeds(z);
    if (v < ends.v_in - 1e-12 || v > ends.v_out + 1e-12)
        throw std::invalid_argument("fiber counts: speed outside [v(0), v(1)]");
    const double v1 = z.B * z.v0;
    const double n = z.n0 * z.v0 / v;
    const double frac = (v - z.v0) / (v1 - z.v0);
    return {n, n * (1.0 - frac), n * frac};
}

struct ThinningReport {
    double z = 0.0;              // root parameter, always inside (0, 1)
    double n_star_hi = 0.0;      // candidate inflection count
    double n_star_lo = 0.0;      // second root, always below the reachable range
    double beta_threshold = 0.0;
    bool has_inflection = false;
};

// Locates the inflection of the thinning curve n(x).  The curve loses its
// inflection only when the exit slip is large enough to push the candidate
// count below the reachable interval [n(1), n(0)].
inline ThinningReport thinning_classification(const DraftZone& z) {
    validate_zone(z);
    const double B = z.B;
    const double s = std::sqrt(B * B - B + 1.0);
    const double n1 = z.n0 / B;
    ThinningReport rep;
    rep.z = B - s;
    rep.n_star_hi = n1 / 3.0 * (2.0 * B + 1.0 - rep.z);
    rep.n_star_lo = n1 / 3.0 * (1.0 + rep.z);
    rep.beta_threshold = B / (B - 1.0) * (B - 2.0 + s) / (B + 1.0 + s);
    const double n_entry = z.n0 / (1.0 + (B - 1.0) * z.alpha);
    const double n_exit = z.n0 / (B - (B - 1.0) * z.beta);
    rep.has_inflection = rep.n_star_hi >= n_exit && rep.n_star_hi <= n_entry;
    return rep;
}

struct GeneralLawParams {
    double r = 0.0;        // Hookean force density
    double delta = 1.0;    // inverse draft length
    double q = 1.0;        // mass flux
};

struct FictitiousSlip {
    double w0 = 0.0;
    double w1 = 0.0;
    double alpha_fict = 0.0;
    double beta_fict = 0.0;
};

// A Hookean term in the force law acts exactly like nip slippage: the observed
// speeds v0, v1 sit strictly inside fictitious limits w0, w1 that preserve the
// speed product.
inline FictitiousSlip general_law_convert(const GeneralLawParams& p, double v0,
                                          double v1) {
    if (p.r < 0.0 || !(p.delta > 0.0) || !(p.q > 0.0))
        throw std::invalid_argument("general law: need r >= 0 and positive delta, q");
    if (!(0.0 < v0) || !(v0 < v1))
        throw std::invalid_argument("general law: need 0 < v0 < v1");
    const double half_sum = p.r / (p.delta * p.q) + 0.5 * (v0 + v1);
    const double root = std::sqrt(half_sum * half_sum - v0 * v1);
    const double w0 = half_sum - root;
    const double w1 = half_sum + root;
    return {w0, w1, (v0 - w0) / (w1 - w0), (w1 - v1) / (w1 - w0)};
}

// Space-time samples of one field on a uniform rectangular grid;
// values[i][j] belongs to (t[i], x[j]).
struct FieldGrid {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<std::vector<double>> values;
};

namespace detail {

inline double uniform_step(const std::vector<double>& axis, const char* what) {
    if (axis.size() < 3) throw std::invalid_argument(std::string(what) + ": need >= 3 nodes");
    const double h = axis[1] - axis[0];
    if (!(h > 0.0)) throw std::invalid_argument(std::string(what) + ": nodes must increase");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (std::fabs(axis[i] - axis[0] - i * h) > 1e-9 * (std::fabs(axis.back()) + h))
            throw std::invalid_argument(std::string(what) + ": spacing must be uniform");
    }
    return h;
}

inline void validate_grid(const FieldGrid& g) {
    uniform_step(g.x, "grid x axis");
    uniform_step(g.t, "grid t axis");
    if (g.values.size() != g.t.size())
        throw std::invalid_argument("grid: one row of values per time node");
    for (const auto& row : g.values)
        if (row.size() != g.x.size())
            throw std::invalid_argument("grid: one value per space node");
}

// Second-order first derivative of a sampled line: central inside, one-sided
// at the ends.
inline std::vector<double> line_derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

// Second-order second derivative of a sampled line.
inline std::vector<double> line_second_derivative(const std::vector<double>& f,
                                                  double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    const double h2 = h * h;
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / h2;
    if (n >= 4) {
        d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
        d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    } else {
        d[0] = d[n - 1] = d[1];
    }
    return d;
}

inline std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double h) {
    std::vector<double> c(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        c[i] = c[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return c;
}

inline FieldGrid like(const FieldGrid& g) {
    FieldGrid out;
    out.x = g.x;
    out.t = g.t;
    out.values.assign(g.t.size(), std::vector<double>(g.x.size(), 0.0));
    return out;
}

inline FieldGrid grid_ddx(const FieldGrid& g) {
    const double h = uniform_step(g.x, "grid x axis");
    FieldGrid out = like(g);
    for (std::size_t i = 0; i < g.t.size(); ++i)
        out.values[i] = line_derivative(g.values[i], h);
    return out;
}

inline FieldGrid grid_ddt(const FieldGrid& g) {
    const double h = uniform_step(g.t, "grid t axis");
    FieldGrid out = like(g);
    std::vector<double> column(g.t.size());
    for (std::size_t j = 0; j < g.x.size(); ++j) {
        for (std::size_t i = 0; i < g.t.size(); ++i) column[i] = g.values[i][j];
        const auto d = line_derivative(column, h);
        for (std::size_t i = 0; i < g.t.size(); ++i) out.values[i][j] = d[i];
    }
    return out;
}

inline FieldGrid grid_d2dx(const FieldGrid& g) {
    const double h = uniform_step(g.x, "grid x axis");
    FieldGrid out = like(g);
    for (std::size_t i = 0; i < g.t.size(); ++i)
        out.values[i] = line_second_derivative(g.values[i], h);
    return out;
}

inline FieldGrid grid_d2dt(const FieldGrid& g) {
    const double h = uniform_step(g.t, "grid t axis");
    FieldGrid out = like(g);
    std::vector<double> column(g.t.size());
    for (std::size_t j = 0; j < g.x.size(); ++j) {
        for (std::size_t i = 0; i < g.t.size(); ++i) column[i] = g.values[i][j];
        const auto d = line_second_derivative(column, h);
        for (std::size_t i = 0; i < g.t.size(); ++i) out.values[i][j] = d[i];
    }
    return out;
}

}  // namespace detail

// Largest absolute residual of the continuity law d(lambda)/dt + d(lambda v)/dx.
inline double continuity_residual(const FieldGrid& lambda, const FieldGrid& v) {
    detail::validate_grid(lambda);
    detail::validate_grid(v);
    FieldGrid flux = detail::like(lambda);
    for (std::size_t i = 0; i < lambda.t.size(); ++i)
        for (std::size_t j = 0; j < lambda.x.size(); ++j)
            flux.values[i][j] = lambda.values[i][j] * v.values[i][j];
    const FieldGrid lt = detail::grid_ddt(lambda);
    const FieldGrid fx = detail::grid_ddx(flux);
    double worst = 0.0;
    for (std::size_t i = 0; i < lambda.t.size(); ++i)
        for (std::size_t j = 0; j < lambda.x.size(); ++j)
            worst = std::max(worst, std::fabs(lt.values[i][j] + fx.values[i][j]));
    return worst;
}

struct RecoveredFromLambda {
    FieldGrid q;
    FieldGrid v;
    FieldGrid F;
    std::vector<double> draft;    // exit-to-entry speed ratio per time node
};

// Mass conservation turns a measured density field into flux, speed, and
// force fields; only the inlet flux history is needed to anchor the integrals.
inline RecoveredFromLambda recover_from_lambda(const FieldGrid& lambda,
                                               const std::function<double(double)>& q_in) {
    detail::validate_grid(lambda);
    for (const auto& row : lambda.values)
        for (double val : row)
            if (!(val > 0.0))
                throw std::invalid_argument("density field must be strictly positive");
    const double hx = lambda.x[1] - lambda.x[0];
    const FieldGrid lt = detail::grid_ddt(lambda);
    RecoveredFromLambda out;
    out.q = detail::like(lambda);
    out.v = detail::like(lambda);
    out.F = detail::like(lambda);
    out.draft.resize(lambda.t.size());
    for (std::size_t i = 0; i < lambda.t.size(); ++i) {
        const auto cum = detail::cumulative_trapezoid(lt.values[i], hx);
        const double q0 = q_in(lambda.t[i]);
        for (std::size_t j = 0; j < lambda.x.size(); ++j) {
            out.q.values[i][j] = q0 - cum[j];
            if (!(out.q.values[i][j] > 0.0))
                throw std::domain_error(
                    "recovered mass flux is nonpositive; the density history is "
                    "inconsistent with the inlet flux");
            out.v.values[i][j] = out.q.values[i][j] / lambda.values[i][j];
        }
        out.draft[i] = lambda.values[i][0] / lambda.values[i].back() *
                       (1.0 - cum.back() / q0);
    }
    // The flux rate comes from the data directly: differentiating the
    // recovered flux grid would amplify its discretization error by 1/h.
    const FieldGrid ltt = detail::grid_d2dt(lambda);
    for (std::size_t i = 0; i < lambda.t.size(); ++i) {
        const double t = lambda.t[i];
        const double dt = 1e-5 * (1.0 + std::fabs(t));
        const double dq0 = (q_in(t + dt) - q_in(t - dt)) / (2.0 * dt);
        const auto inner = detail::cumulative_trapezoid(ltt.values[i], hx);
        const auto twice = detail::cumulative_trapezoid(inner, hx);
        const double inlet = out.q.values[i][0] * out.v.values[i][0];
        for (std::size_t j = 0; j < lambda.x.size(); ++j)
            out.F.values[i][j] = out.q.values[i][j] * out.v.values[i][j] - inlet +
                                 dq0 * lambda.x[j] - twice[j];
    }
    return out;
}

struct RecoveredFromQ {
    FieldGrid lambda;
    FieldGrid v;
    FieldGrid F;
    std::vector<double> draft;
};

inline RecoveredFromQ recover_from_q(const FieldGrid& q,
                                     const std::function<double(double)>& lambda0) {
    detail::validate_grid(q);
    const double hx = q.x[1] - q.x[0];
    const double ht = q.t[1] - q.t[0];
    const FieldGrid qx = detail::grid_ddx(q);
    RecoveredFromQ out;
    out.lambda = detail::like(q);
    out.v = detail::like(q);
    out.F = detail::like(q);
    out.draft.resize(q.t.size());
    for (std::size_t j = 0; j < q.x.size(); ++j) {
        double integral = 0.0;
        double prev = qx.values[0][j];
        for (std::size_t i = 0; i < q.t.size(); ++i) {
            if (i > 0) {
                integral += 0.5 * ht * (prev + qx.values[i][j]);
                prev = qx.values[i][j];
            }
            const double lam = lambda0(q.x[j]) - integral;
            if (!(lam > 0.0))
                throw std::domain_error(
                    "recovered density is nonpositive; the flux history is "
                    "inconsistent with the initial density");
            out.lambda.values[i][j] = lam;
            out.v.values[i][j] = q.values[i][j] / lam;
        }
    }
    const FieldGrid qt = detail::grid_ddt(q);
    for (std::size_t i = 0; i < q.t.size(); ++i) {
        const auto cum = detail::cumulative_trapezoid(qt.values[i], hx);
        const double inlet = q.values[i][0] * out.v.values[i][0];
        for (std::size_t j = 0; j < q.x.size(); ++j)
            out.F.values[i][j] = q.values[i][j] * out.v.values[i][j] - inlet + cum[j];
        out.draft[i] = out.v.values[i].back() / out.v.values[i][0];
    }
    return out;
}

struct LambdaSeries {
    FieldGrid lambda;
    double residual = 0.0;    // continuity residual of the partial sum
    int terms_used = 0;
    bool diverged = false;
};

// Iterated-integral series for the density given the speed field and the
// inlet density history.  Nothing guarantees convergence; growth of the terms
// is watched and flagged, and the partial sum is returned either way.
inline LambdaSeries lambda_series_from_v(const FieldGrid& v,
                                         const std::function<double(double)>& phi,
                                         int terms) {
    detail::validate_grid(v);
    if (terms < 1) throw std::invalid_argument("series needs at least one term");
    for (const auto& row : v.values)
        for (double val : row)
            if (!(val > 0.0))
                throw std::invalid_argument("speed field must be strictly positive");
    const double hx = v.x[1] - v.x[0];
    LambdaSeries out;
    out.lambda = detail::like(v);
    FieldGrid term = detail::like(v);
    double base_mag = 0.0;
    for (std::size_t i = 0; i < v.t.size(); ++i) {
        const double inlet = phi(v.t[i]);
        if (!(inlet > 0.0))
            throw std::invalid_argument("inlet density history must be positive");
        for (std::size_t j = 0; j < v.x.size(); ++j) {
            term.values[i][j] = inlet * v.values[i][0] / v.values[i][j];
            out.lambda.values[i][j] = term.values[i][j];
            base_mag = std::max(base_mag, std::fabs(term.values[i][j]));
        }
    }
    out.terms_used = 1;
    double prev_mag = base_mag;
    for (int k = 1; k < terms; ++k) {
        const FieldGrid dt = detail::grid_ddt(term);
        FieldGrid next = detail::like(v);
        double mag = 0.0;
        for (std::size_t i = 0; i < v.t.size(); ++i) {
            const auto cum = detail::cumulative_trapezoid(dt.values[i], hx);
            for (std::size_t j = 0; j < v.x.size(); ++j) {
                next.values[i][j] = -cum[j] / v.values[i][j];
                mag = std::max(mag, std::fabs(next.values[i][j]));
            }
        }
        if (mag <= 1e-14 * base_mag) break;
        if (mag > prev_mag) {
            // A growing term is never added: it is either true divergence or
            // the noise floor of repeated grid differentiation.  Only growth
            // while the terms were still significant counts as divergence.
            out.diverged = prev_mag > 1e-2 * base_mag;
            break;
        }
        for (std::size_t i = 0; i < v.t.size(); ++i)
            for (std::size_t j = 0; j < v.x.size(); ++j)
                out.lambda.values[i][j] += next.values[i][j];
        ++out.terms_used;
        term = std::move(next);
        prev_mag = mag;
    }
    out.residual = continuity_residual(out.lambda, v);
    return out;
}

// Speed of the fiber family changing hands at position x when fibers commit
// to the faster speed after a fixed fraction of their length has crossed.
inline double floating_speed(double vin, double vout, double B, double kappa, double x,
                             double l) {
    if (!(vout > vin)) throw std::invalid_argument("floating speed: need vout > vin");
    if (!(kappa > 1.0)) throw std::invalid_argument("floating speed: need kappa > 1");
    if (!(B > 1.0)) throw std::invalid_argument("floating speed: need B > 1");
    if (x < 0.0 || x > l) throw std::invalid_argument("floating speed: x outside [0, l]");
    if (x == 0.0) return vin;
    if (x == l) return vout;
    const double range = vout - vin;
    const double rhs =
        (B - 1.0) * std::log(range) + kappa * B * (std::log(l - x) - std::log(x));
    // Solve in u = ln((w - vin)/(vout - w)).  Near either nip the root sits
    // within rounding distance of the bracket in w, while in u it stays
    // moderate and the residual slope is bounded by B.
    auto log_sigmoid = [](double u) {
        return u >= 0.0 ? -std::log1p(std::exp(-u)) : u - std::log1p(std::exp(u));
    };
    auto g = [&](double u) {
        return B * (std::log(range) + log_sigmoid(-u)) -
               (std::log(range) + log_sigmoid(u)) - rhs;
    };
    const double reach =
        100.0 + std::fabs(rhs) + (B + 1.0) * std::fabs(std::log(range));
    const double u = bisect(g, -reach, reach, 1e-13);
    return vin + range / (1.0 + std::exp(-u));
}

inline double dynamic_fiber_length(double B, double kappa, double l) {
    if (!(B >= 1.0) || !(kappa > 1.0) || !(l > 0.0))
        throw std::invalid_argument("dynamic length: need B >= 1, kappa > 1, l > 0");
    return (B - 1.0) * l / (2.0 * kappa * B);
}

// Normalized local draft of the quasi-stationary regime; the same curve as
// floating_speed after scaling speeds by the entry value.
inline double quasi_stationary_Bx(double B, double kappa, double xi) {
    if (!(B >= 1.0)) throw std::invalid_argument("local draft: need B >= 1");
    if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("local draft: xi outside [0, 1]");
    if (B == 1.0) return 1.0;
    return floating_speed(1.0, B, B, kappa, xi, 1.0);
}

inline double quasi_stationary_force(const std::function<double(double)>& q,
                                     const std::function<double(double)>& dqdt,
                                     const std::function<double(double, double)>& v,
                                     double x, double t) {
    return q(t) * (v(x, t) - v(0.0, t)) + dqdt(t) * x;
}

}  // namespace mechkit
