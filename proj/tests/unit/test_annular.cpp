#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mechkit/annular.hpp"

namespace mk = mechkit;

namespace {

mk::BearingGeometry thin(double alpha = 0.5) {
    return {1.0, 1.05, {2.0, {alpha}}};
}

}  // namespace

TEST_CASE("gap angle interpolates the wall rotations", "[annular]") {
    auto g = thin();
    CHECK(mk::thin_gap_angle(g, g.r1, 0.3, -0.1) == Catch::Approx(0.3).margin(1e-14));
    CHECK(mk::thin_gap_angle(g, g.r2, 0.3, -0.1) == Catch::Approx(-0.1).margin(1e-14));
    const double mid = 0.5 * (g.r1 + g.r2);
    const double a = mk::thin_gap_angle(g, mid, 1.0, 0.0);
    const double b = mk::thin_gap_angle(g, mid, 0.0, 1.0);
    CHECK(a > 0.0);
    CHECK(b > 0.0);
    CHECK(mk::thin_gap_angle(g, mid, 2.0, 3.0) ==
          Catch::Approx(2.0 * a + 3.0 * b).margin(1e-14));
}

TEST_CASE("gap strain matches the angle gradient", "[annular]") {
    auto g = thin();
    const double psi = 0.4;
    for (double r : {1.01, 1.025, 1.04}) {
        const double dr = 1e-6;
        const double grad = (mk::thin_gap_angle(g, r + dr, 0.0, psi) -
                             mk::thin_gap_angle(g, r - dr, 0.0, psi)) /
                            (2.0 * dr);
        CHECK(mk::gap_strain(g, r, psi) == Catch::Approx(r * grad).epsilon(1e-7));
    }
    CHECK(mk::gap_strain(g, 1.02, 0.0) == 0.0);
    CHECK(mk::gap_strain(g, 1.02, -psi) == Catch::Approx(-mk::gap_strain(g, 1.02, psi)));
}

TEST_CASE("wall stress for harmonic rotation", "[annular]") {
    auto g = thin(0.5);
    std::vector<mk::RotationHarmonic> one{{0.2, 3.0}};
    const double t = 0.8;
    const double expected = g.law.kappa * g.r2 / (g.r2 - g.r1) * 0.2 *
                            std::sqrt(3.0) * std::sin(3.0 * t + 0.25 * M_PI);
    CHECK(mk::wall_stress_harmonic(g, one, t, mk::Wall::inner) ==
          Catch::Approx(expected).epsilon(1e-12));

    std::vector<mk::RotationHarmonic> several{{0.2, 3.0}, {0.05, 7.0}, {0.01, 11.0}};
    const double si = mk::wall_stress_harmonic(g, several, t, mk::Wall::inner);
    const double so = mk::wall_stress_harmonic(g, several, t, mk::Wall::outer);
    CHECK(si / so == Catch::Approx(g.r2 / g.r1).epsilon(1e-13));

    CHECK(mk::wall_stress_harmonic(g, {}, t, mk::Wall::inner) == 0.0);
}

TEST_CASE("wall stress classical limits", "[annular]") {
    const double t = 1.1;
    std::vector<mk::RotationHarmonic> one{{0.5, 2.0}};
    auto elastic = thin(0.0);
    CHECK(mk::wall_stress_harmonic(elastic, one, t, mk::Wall::outer) ==
          Catch::Approx(elastic.law.kappa * elastic.r1 / 0.05 * 0.5 * std::sin(2.0 * t))
              .epsilon(1e-11));
    auto viscous = thin(1.0);
    CHECK(mk::wall_stress_harmonic(viscous, one, t, mk::Wall::outer) ==
          Catch::Approx(viscous.law.kappa * viscous.r1 / 0.05 * 0.5 * 2.0 *
                        std::cos(2.0 * t))
              .epsilon(1e-11));
}

TEST_CASE("thin-gap advisory flag", "[annular]") {
    CHECK(mk::validate_bearing(thin()).thin_gap);
    mk::BearingGeometry wide{1.0, 1.5, {1.0, {0.5}}};
    CHECK_FALSE(mk::validate_bearing(wide).thin_gap);
}

TEST_CASE("bearing input validation", "[annular]") {
    mk::BearingGeometry bad{1.0, 0.9, {1.0, {0.5}}};
    CHECK_THROWS_AS(mk::validate_bearing(bad), std::invalid_argument);
    mk::BearingGeometry neg{-1.0, 2.0, {1.0, {0.5}}};
    CHECK_THROWS_AS(mk::validate_bearing(neg), std::invalid_argument);
    auto g = thin();
    CHECK_THROWS_AS(mk::thin_gap_angle(g, 0.99, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(mk::gap_strain(g, 1.06, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(mk::wall_stress_harmonic(g, {{0.1, -1.0}}, 0.0, mk::Wall::inner),
                    std::invalid_argument);
}
