#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mechkit {

/**
 * @brief Numerical inverse Laplace transform on the Bromwich line with
 *        quotient-difference acceleration of the Fourier series.
 *
 * Evaluates f(t) from F(p) using 2M+1 transform samples along
 * p = gamma + i k pi / (2t).  Works for transforms whose singularities lie
 * in Re p <= sigma0; accuracy is roughly tol for smooth f.
 */
inline double laplace_invert(
    const std::function<std::complex<double>(std::complex<double>)>& transform,
    double t, int terms = 24, double tol = 1e-10, double sigma0 = 0.0) {
    if (!(t > 0.0)) throw std::invalid_argument("laplace_invert: t must be positive");
    if (terms < 2) throw std::invalid_argument("laplace_invert: terms < 2");
    using cplx = std::complex<double>;

    const int M = terms;
    const int n = 2 * M + 1;
    const double T = 2.0 * t;
    const double gamma = sigma0 - std::log(tol) / (2.0 * T);

    std::vector<cplx> a(n);
    double biggest = 0.0;
    for (int k = 0; k < n; ++k) {
        a[k] = transform(cplx(gamma, k * M_PI / T));
        biggest = std::max(biggest, std::abs(a[k]));
    }
    if (biggest == 0.0) return 0.0;
    a[0] *= 0.5;

    // quotient-difference table -> continued fraction coefficients d
    std::vector<std::vector<cplx>> e(n, std::vector<cplx>(M + 1, cplx(0.0)));
    std::vector<std::vector<cplx>> q(n, std::vector<cplx>(M + 1, cplx(0.0)));
    for (int i = 0; i + 1 < n; ++i) q[i][1] = a[i + 1] / a[i];
    for (int r = 1; r <= M; ++r) {
        for (int i = 0; i + 2 * r < n; ++i)
            e[i][r] = q[i + 1][r] - q[i][r] + e[i + 1][r - 1];
        if (r < M)
            for (int i = 0; i + 2 * r + 1 < n; ++i)
                q[i][r + 1] = q[i + 1][r] * e[i + 1][r] / e[i][r];
    }
    std::vector<cplx> d(n);
    d[0] = a[0];
    for (int r = 1; r <= M; ++r) {
        d[2 * r - 1] = -q[0][r];
        d[2 * r] = -e[0][r];
    }

    // evaluate the continued fraction at z = exp(i pi t / T)
    const cplx z = std::polar(1.0, M_PI * t / T);
    cplx am1(0.0), bm1(1.0), am0 = d[0], bm0(1.0);
    for (int k = 1; k < n - 1; ++k) {
        const cplx an = am0 + d[k] * z * am1;
        const cplx bn = bm0 + d[k] * z * bm1;
        am1 = am0;
        bm1 = bm0;
        am0 = an;
        bm0 = bn;
    }
    // improved last step
    const cplx h = 0.5 * (1.0 + z * (d[n - 2] - d[n - 1]));
    const cplx rem = -h * (1.0 - std::sqrt(1.0 + z * d[n - 1] / (h * h)));
    const cplx an = am0 + rem * am1;
    const cplx bn = bm0 + rem * bm1;

    return std::exp(gamma * t) / T * (an / bn).real();
}

}  // namespace mechkit
