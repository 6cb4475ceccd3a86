#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mechkit {

// Lower-triangular Toeplitz discretization of the hereditary integral
// equation W(t) = int_0^t V(t - s) K(s) ds on a uniform grid, with the step
// already folded into V (V_j = step * V(j step)).
struct DiscretizedVolterra {
    double step = 1.0;
    std::vector<double> V;
    std::vector<double> W;
};

inline void validate_volterra(const DiscretizedVolterra& sys) {
    if (!(sys.step > 0.0)) throw std::invalid_argument("volterra system: step must be positive");
    if (sys.V.size() != sys.W.size() || sys.V.size() < 2)
        throw std::invalid_argument("volterra system: V and W need equal length >= 2");
}

// Forward substitution through the triangular system sum_j V_{i-j} K_j = W_i.
inline std::vector<double> solve_kernel(const DiscretizedVolterra& sys) {
    validate_volterra(sys);
    if (sys.V[0] == 0.0)
        throw std::domain_error(
            "kernel identification: V(0) = 0 makes every diagonal pivot vanish; "
            "differentiate the data first (regularize_by_differentiation)");
    const std::size_t n = sys.V.size();
    std::vector<double> K(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = sys.W[i];
        for (std::size_t j = 0; j < i; ++j) acc -= sys.V[i - j] * K[j];
        K[i] = acc / sys.V[0];
    }
    return K;
}

// Convenience for building synthetic right-hand sides in tests and demos.
inline std::vector<double> convolve_kernel(const std::vector<double>& V,
                                           const std::vector<double>& K) {
    if (V.size() != K.size()) throw std::invalid_argument("convolution: length mismatch");
    std::vector<double> W(V.size(), 0.0);
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) W[i] += V[i - j] * K[j];
    return W;
}

namespace detail {

// Fourth-order central difference of order k at t, for k = 0..4.
inline double central_derivative(const std::function<double(double)>& f, double t,
                                 int k, double h) {
    switch (k) {
        case 0:
            return f(t);
        case 1:
            return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
        case 2:
            return (-f(t - 2 * h) + 16 * f(t - h) - 30 * f(t) + 16 * f(t + h) -
                    f(t + 2 * h)) /
                   (12 * h * h);
        case 3:
            return (f(t - 3 * h) - 8 * f(t - 2 * h) + 13 * f(t - h) - 13 * f(t + h) +
                    8 * f(t + 2 * h) - f(t + 3 * h)) /
                   (8 * h * h * h);
        case 4:
            return (-f(t - 3 * h) + 12 * f(t - 2 * h) - 39 * f(t - h) + 56 * f(t) -
                    39 * f(t + h) + 12 * f(t + 2 * h) - f(t + 3 * h)) /
                   (6 * h * h * h * h);
        default:
            throw std::invalid_argument("central differences supported up to order 4");
    }
}

}  // namespace detail

struct RegularizedSystem {
    DiscretizedVolterra system;
    int order = 0;    // how many time differentiations were applied
};

// Differentiates both sides of the hereditary equation until the new V no
// longer vanishes at t = 0, then discretizes the differentiated data.
inline RegularizedSystem regularize_by_differentiation(
    const std::function<double(double)>& V_fn, const std::function<double(double)>& W_fn,
    int max_order, double step, int count) {
    if (max_order < 0 || max_order > 4)
        throw std::invalid_argument("differentiation order must lie in [0, 4]");
    if (!(step > 0.0) || count < 2)
        throw std::invalid_argument("need a positive step and at least two samples");
    const double h = 1e-2;
    int k = -1;
    for (int trial = 0; trial <= max_order; ++trial) {
        const double d = detail::central_derivative(V_fn, 0.0, trial, h);
        double scale = 0.0;
        for (int off = -3; off <= 3; ++off) scale = std::max(scale, std::fabs(V_fn(off * h)));
        const double noise_floor = 64.0 * scale / std::pow(h, trial) * 1e-10;
        if (std::fabs(d) > noise_floor + 1e-12) {
            k = trial;
            break;
        }
    }
    if (k < 0)
        throw std::domain_error(
            "kernel identification: every time derivative of V through the requested "
            "order vanishes at t = 0; the singularity cannot be removed this way");
    const double hg = step / 4.0;
    DiscretizedVolterra sys;
    sys.step = step;
    sys.V.reserve(count);
    sys.W.reserve(count);
    for (int j = 0; j < count; ++j) {
        const double t = j * step;
        sys.V.push_back(step * detail::central_derivative(V_fn, t, k, hg));
        sys.W.push_back(detail::central_derivative(W_fn, t, k, hg));
    }
    return {std::move(sys), k};
}

struct PronyTerm {
    double amplitude = 0.0;
    double exponent = 0.0;
};

struct PronyModel {
    std::vector<PronyTerm> terms;
    double residual_rms = 0.0;
    bool complex_exponents = false;
    bool unstable_exponents = false;
};

inline double prony_eval(const PronyModel& model, double t) {
    double acc = 0.0;
    for (const auto& term : model.terms) acc += term.amplitude * std::exp(term.exponent * t);
    return acc;
}

// Classical linear-prediction fit of an exponential sum: the sample sequence
// is assumed to obey an order-n recurrence whose characteristic roots are the
// per-step decay ratios; amplitudes then come from a linear least squares.
inline PronyModel prony_fit(const std::vector<std::pair<double, double>>& samples,
                            int n_terms) {
    const int N = static_cast<int>(samples.size());
    if (n_terms < 1) throw std::invalid_argument("prony fit: need at least one term");
    if (N < 2 * n_terms)
        throw std::invalid_argument("prony fit: need at least 2*n_terms samples");
    const double tau = samples[1].first - samples[0].first;
    if (!(tau > 0.0)) throw std::invalid_argument("prony fit: samples must advance in time");
    for (int j = 1; j < N; ++j) {
        if (std::fabs(samples[j].first - samples[0].first - j * tau) > 1e-9 * tau * N)
            throw std::invalid_argument("prony fit: samples must sit on a uniform grid");
    }

    // Prediction coefficients by total least squares: every column of the
    // prediction system carries the same sample noise, so the right nullspace
    // of the stacked matrix is the unbiased estimate.
    const int rows = N - n_terms;
    Eigen::MatrixXd M(rows, n_terms + 1);
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i <= n_terms; ++i) M(j, i) = samples[j + i].second;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const Eigen::VectorXd v = svd.matrixV().col(n_terms);
    Eigen::VectorXd c(n_terms);
    if (std::fabs(v(n_terms)) > 1e-12 * v.norm()) {
        c = v.head(n_terms) / v(n_terms);
    } else {
        Eigen::VectorXd rhs(rows);
        for (int j = 0; j < rows; ++j) rhs(j) = -samples[j + n_terms].second;
        c = M.leftCols(n_terms).colPivHouseholderQr().solve(rhs);
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n_terms, n_terms);
    for (int i = 0; i + 1 < n_terms; ++i) companion(i + 1, i) = 1.0;
    for (int i = 0; i < n_terms; ++i) companion(i, n_terms - 1) = -c(i);
    const Eigen::VectorXcd mu = Eigen::EigenSolver<Eigen::MatrixXd>(companion).eigenvalues();

    PronyModel model;
    model.terms.resize(n_terms);
    for (int p = 0; p < n_terms; ++p) {
        const std::complex<double> m = mu(p);
        const bool off_axis = std::fabs(m.imag()) > 1e-8 * (1.0 + std::abs(m));
        // A negative real ratio alternates sign step to step; no real
        // exponential reproduces that either.
        if (off_axis || (!off_axis && m.real() < 0.0)) model.complex_exponents = true;
        const double mag = std::max(std::abs(m), 1e-300);
        model.terms[p].exponent = std::log(mag) / tau;
        if (model.terms[p].exponent > 1e-10) model.unstable_exponents = true;
    }
    std::sort(model.terms.begin(), model.terms.end(),
              [](const PronyTerm& a, const PronyTerm& b) { return a.exponent > b.exponent; });

    Eigen::MatrixXd E(N, n_terms);
    Eigen::VectorXd y(N);
    for (int j = 0; j < N; ++j) {
        y(j) = samples[j].second;
        for (int p = 0; p < n_terms; ++p)
            E(j, p) = std::exp(model.terms[p].exponent * samples[j].first);
    }
    const Eigen::VectorXd A = E.colPivHouseholderQr().solve(y);
    for (int p = 0; p < n_terms; ++p) model.terms[p].amplitude = A(p);

    double ss = 0.0;
    for (int j = 0; j < N; ++j) {
        const double r = prony_eval(model, samples[j].first) - samples[j].second;
        ss += r * r;
    }
    model.residual_rms = std::sqrt(ss / N);
    return model;
}

}  // namespace mechkit
