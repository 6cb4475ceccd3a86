#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "mechkit/constitutive.hpp"
#include "mechkit/measure_json.hpp"
#include "mechkit/special.hpp"

namespace mk = mechkit;
using cplx = std::complex<double>;

namespace {

mk::SampledSignal grid(double step, std::size_t n, double (*f)(double)) {
    mk::SampledSignal s;
    s.step = step;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.values[i] = f(i * step);
    return s;
}

}  // namespace

TEST_CASE("single-exponent law reduces to Hooke at order zero", "[constitutive]") {
    auto eps = grid(0.01, 101, [](double t) { return t * t; });
    auto sig = mk::stress_from_strain({2.5, {0.0}}, eps);
    for (std::size_t i = 0; i < sig.values.size(); ++i)
        CHECK(sig.values[i] == Catch::Approx(2.5 * eps.values[i]).margin(1e-12));
}

TEST_CASE("single-exponent law reduces to Newton at order one", "[constitutive]") {
    auto eps = grid(0.01, 101, [](double t) { return 3.0 * t; });
    auto sig = mk::stress_from_strain({2.0, {1.0}}, eps);
    for (double v : sig.values) CHECK(v == Catch::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("half-order law against the power-law closed form", "[constitutive]") {
    auto eps = grid(1e-3, 1001, [](double t) { return t; });
    auto sig = mk::stress_from_strain({4.0, {0.5}}, eps);
    const double g32 = mk::gamma(1.5);
    const double t = 0.8;
    CHECK(sig.values[800] == Catch::Approx(4.0 * std::sqrt(t) / g32).epsilon(0.02));
}

// standard solid with relaxation time 1/q and retardation n:
//   sigma + sigma'/q = E eps + E eps'/n
// For eps = e^{lam t} - 1 the matching stress is
//   sigma = A e^{lam t} - E + (E - A) e^{-q t},  A = E (1 + lam/n)/(1 + lam/q).
TEST_CASE("standard solid records have near-zero law defect", "[constitutive]") {
    const double q = 2.0, n = 1.5, E = 3.0, lam = 0.35;
    const double A = E * (1.0 + lam / n) / (1.0 + lam / q);
    const double h = 1e-3;
    const std::size_t N = 2001;
    mk::SampledSignal eps, sig;
    eps.step = sig.step = h;
    eps.values.resize(N);
    sig.values.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double t = i * h;
        eps.values[i] = std::exp(lam * t) - 1.0;
        sig.values[i] = A * std::exp(lam * t) - E + (E - A) * std::exp(-q * t);
    }
    mk::DerivativeMeasure on_stress{{{0.0, 1.0}, {1.0, 1.0 / q}}};
    mk::DerivativeMeasure on_strain{{{0.0, E}, {1.0, E / n}}};
    auto r = mk::measure_law_residual(on_stress, on_strain, sig, eps);
    double worst = 0.0;
    for (double v : r.values) worst = std::max(worst, std::fabs(v));
    CHECK(worst < 1e-4);
}

TEST_CASE("law defect is exactly antisymmetric under side swap", "[constitutive]") {
    auto eps = grid(0.01, 64, [](double t) { return std::sin(t); });
    auto sig = grid(0.01, 64, [](double t) { return std::cos(t) - 1.0; });
    mk::DerivativeMeasure a{{{0.3, 1.2}}};
    mk::DerivativeMeasure b{{{0.7, -0.4}}};
    auto r1 = mk::measure_law_residual(a, b, sig, eps);
    auto r2 = mk::measure_law_residual(b, a, eps, sig);
    for (std::size_t i = 0; i < r1.values.size(); ++i)
        CHECK(r1.values[i] == Catch::Approx(-r2.values[i]).margin(1e-14));
}

TEST_CASE("mismatched grids are rejected", "[constitutive]") {
    auto a = grid(0.01, 64, [](double t) { return t; });
    auto b = grid(0.02, 64, [](double t) { return t; });
    auto c = grid(0.01, 65, [](double t) { return t; });
    mk::DerivativeMeasure m{{{0.0, 1.0}}};
    CHECK_THROWS_AS(mk::measure_law_residual(m, m, a, b), std::invalid_argument);
    CHECK_THROWS_AS(mk::measure_law_residual(m, m, a, c), std::invalid_argument);
}

TEST_CASE("measure validation rejects duplicates and dead weights", "[constitutive]") {
    CHECK_THROWS_AS(mk::validate_measure({{{0.5, 1.0}, {0.5, 2.0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(mk::validate_measure({{{0.5, 0.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(mk::validate_measure({{}}), std::invalid_argument);
    CHECK_NOTHROW(mk::validate_measure({{{0.0, 1.0}, {0.5, -2.0}, {1.0, 0.1}}}));
}

TEST_CASE("wave slowness of the fractional element", "[constitutive]") {
    // stress measure 1, strain measure kappa d^alpha: A p = c p^{1 - alpha/2}
    const double rho = 2.0, kappa = 5.0, alpha = 0.6;
    mk::DerivativeMeasure on_stress{{{0.0, 1.0}}};
    mk::DerivativeMeasure on_strain{{{alpha, kappa}}};
    const double c = std::sqrt(rho / kappa);
    for (cplx p : {cplx(1.0, 0.0), cplx(0.5, 2.0), cplx(-1.0, 3.0), cplx(0.0, 1.0)}) {
        cplx ap = mk::transfer_scale(on_stress, on_strain, rho, p) * p;
        cplx expected = c * std::pow(p, 1.0 - alpha / 2.0);
        CHECK(std::abs(ap - expected) < 1e-12 * std::abs(expected));
    }
}

TEST_CASE("wave slowness guards its branch cut and singularities", "[constitutive]") {
    mk::DerivativeMeasure one{{{0.0, 1.0}}};
    mk::DerivativeMeasure cancels{{{0.0, 1.0}, {0.5, -1.0}}};
    CHECK_THROWS_AS(mk::transfer_scale(one, one, 1.0, cplx(-2.0, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(mk::transfer_scale(one, cancels, 1.0, cplx(1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("combined stress: hydrostatic and shear parts", "[constitutive]") {
    mk::SmallStrainState st;
    st.lame = {2.0, 1.5, 0.8, 0.3};
    st.pressure = 0.7;
    st.def_u = 0.01 * Eigen::Matrix3d::Identity();
    st.def_udot << 0.0, 0.002, 0.0, 0.002, 0.0, 0.0, 0.0, 0.0, 0.0;
    auto s = mk::combined_stress(st);
    const double diag = 2.0 * 1.5 * 0.01 + 2.0 * 0.03 - 0.7;
    for (int i = 0; i < 3; ++i) CHECK(s(i, i) == Catch::Approx(diag).margin(1e-14));
    CHECK(s(0, 1) == Catch::Approx(2.0 * 0.3 * 0.002).margin(1e-14));
    CHECK(s(1, 0) == Catch::Approx(s(0, 1)).margin(1e-15));
    CHECK(s(2, 0) == Catch::Approx(0.0).margin(1e-15));

    mk::SmallStrainState bad = st;
    bad.def_u(0, 1) = 0.5;
    CHECK_THROWS_AS(mk::combined_stress(bad), std::invalid_argument);
}

TEST_CASE("derivative measure JSON round trip", "[constitutive]") {
    mk::DerivativeMeasure m{{{0.0, 1.0}, {0.5, -2.25}, {1.0, 0.125}}};
    auto j = mk::measure_to_json(m);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[1]["order"].get<double>() == 0.5);
    CHECK(j[1]["weight"].get<double>() == -2.25);
    auto back = mk::measure_from_json(j);
    REQUIRE(back.atoms.size() == m.atoms.size());
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        CHECK(back.atoms[i].order == m.atoms[i].order);
        CHECK(back.atoms[i].weight == m.atoms[i].weight);
    }
    CHECK_THROWS_AS(mk::measure_from_json(nlohmann::json::object()),
                    std::invalid_argument);
}
