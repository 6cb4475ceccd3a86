#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mechkit/cam.hpp"

namespace mk = mechkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct TableRow {
    double angle_deg;
    double x;
    double y;
};

// Published balance-weight curve for a = 1, 0..360 degrees.  Cells listed in
// the skip sets disagree with the closed form by more than the print
// precision; the computed values are authoritative there.
const std::vector<TableRow> kWeightTable = {
    {0, 1.000, 0.000},   {10, 0.990, 0.115},  {20, 0.960, 0.227},
    {30, 0.912, 0.331},  {40, 0.848, 0.422},  {50, 0.771, 0.499},
    {60, 0.684, 0.568},  {70, 0.591, 0.603},  {80, 0.498, 0.629},
    {90, 0.405, 0.637},  {100, 0.319, 0.629}, {110, 0.240, 0.608},
    {120, 0.171, 0.576}, {130, 0.114, 0.536}, {140, 0.069, 0.492},
    {150, 0.036, 0.444}, {160, 0.015, 0.389}, {170, 0.003, 0.357},
    {180, 0.000, 0.318}, {190, 0.009, 0.286}, {200, 0.009, 0.260},
    {210, 0.019, 0.241}, {220, 0.028, 0.227}, {230, 0.036, 0.219},
    {240, 0.043, 0.214}, {250, 0.045, 0.213}, {260, 0.046, 0.212},
    {270, 0.047, 0.212}, {280, 0.041, 0.211}, {290, 0.035, 0.210},
    {300, 0.027, 0.207}, {310, 0.020, 0.202}, {320, 0.013, 0.195},
    {330, 0.008, 0.187}, {340, 0.003, 0.178}, {350, 0.001, 0.169},
    {360, 0.000, 0.159},
};
const std::vector<double> kWeightSkipX = {190};
const std::vector<double> kWeightSkipY = {60, 160};

// Published balance-number curve for b = 1.
const std::vector<TableRow> kNumberTable = {
    {0, 0.000, 0.000},   {10, 0.030, 0.346},  {20, 0.017, 0.670},
    {30, 0.250, 0.957},  {40, 0.413, 1.191},  {45, 0.500, 1.285},
    {50, 0.587, 1.365},  {60, 0.750, 1.480},  {70, 0.883, 1.543},
    {80, 0.970, 1.567},  {90, 1.000, 1.571},  {100, 0.970, 1.574},
    {110, 0.883, 1.559}, {120, 0.750, 1.661}, {130, 0.587, 1.777},
    {135, 0.500, 1.856}, {140, 0.413, 1.951}, {150, 0.250, 2.185},
    {160, 0.117, 2.471}, {170, 0.030, 2.796}, {180, 0.000, 3.142},
};
const std::vector<double> kNumberSkipX = {20};
const std::vector<double> kNumberSkipY = {110};

bool listed(const std::vector<double>& skip, double deg) {
    return std::any_of(skip.begin(), skip.end(),
                       [&](double s) { return std::fabs(s - deg) < 1e-9; });
}

std::vector<double> radians_of(const std::vector<TableRow>& table) {
    std::vector<double> out;
    for (const auto& row : table) out.push_back(row.angle_deg * kPi / 180.0);
    return out;
}

}  // namespace

TEST_CASE("weight-scale cam matches its printed table", "[cam]") {
    const auto prof = mk::weight_profile(1.0, radians_of(kWeightTable));
    REQUIRE(prof.samples.size() == kWeightTable.size());
    for (std::size_t i = 0; i < kWeightTable.size(); ++i) {
        const auto& row = kWeightTable[i];
        const auto& pt = prof.samples[i];
        INFO("row " << row.angle_deg << " deg, computed (" << pt.x << ", " << pt.y
                    << ")");
        if (!listed(kWeightSkipX, row.angle_deg))
            CHECK(std::fabs(pt.x - row.x) <= 0.002);
        if (!listed(kWeightSkipY, row.angle_deg))
            CHECK(std::fabs(pt.y - row.y) <= 0.002);
    }

    const auto quarter = mk::weight_profile(1.0, {kPi / 2.0});
    CHECK(quarter.samples[0].x == Catch::Approx(0.405).margin(0.0015));
    CHECK(quarter.samples[0].y == Catch::Approx(0.637).margin(0.0015));

    const auto half = mk::weight_profile(1.0, {kPi});
    CHECK(half.samples[0].x == Catch::Approx(0.0).margin(1e-15));
    CHECK(half.samples[0].y == Catch::Approx(1.0 / kPi).epsilon(1e-12));

    const auto origin = mk::weight_profile(2.5, {0.0});
    CHECK(origin.samples[0].x == 2.5);
    CHECK(origin.samples[0].y == 0.0);
}

TEST_CASE("number-scale cam matches its printed table", "[cam]") {
    const auto prof = mk::number_profile(1.0, radians_of(kNumberTable));
    REQUIRE(prof.samples.size() == kNumberTable.size());
    for (std::size_t i = 0; i < kNumberTable.size(); ++i) {
        const auto& row = kNumberTable[i];
        const auto& pt = prof.samples[i];
        INFO("row " << row.angle_deg << " deg, computed (" << pt.x << ", " << pt.y
                    << ")");
        if (!listed(kNumberSkipX, row.angle_deg))
            CHECK(std::fabs(pt.x - row.x) <= 0.002);
        if (!listed(kNumberSkipY, row.angle_deg))
            CHECK(std::fabs(pt.y - row.y) <= 0.002);
    }
    CHECK(prof.samples.front().x == 0.0);
    CHECK(prof.samples.front().y == 0.0);
    CHECK(prof.samples.back().y == Catch::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("general envelope reduces to the weight curve", "[cam]") {
    // Identity calibration with C l G = a.
    mk::QuadrantSpec spec;
    spec.sensitivity = 0.5;
    spec.arm = 2.0;
    spec.weight = 3.0;
    spec.phi0 = 0.0;
    spec.phi1 = 0.1;
    spec.phi2 = 6.0;
    spec.calibration = [](double z) { return z; };
    spec.calibration_rate = [](double) { return 1.0; };
    const double a = spec.sensitivity * spec.arm * spec.weight;

    std::vector<double> phis;
    for (int deg = 10; deg <= 340; deg += 15) phis.push_back(deg * kPi / 180.0);
    const auto gen = mk::general_profile(spec, phis);
    const auto ref = mk::weight_profile(a, phis);
    for (std::size_t i = 0; i < phis.size(); ++i) {
        CHECK(gen.samples[i].x == Catch::Approx(ref.samples[i].x).margin(1e-12));
        CHECK(gen.samples[i].y == Catch::Approx(ref.samples[i].y).margin(1e-12));
    }
}

TEST_CASE("general envelope reduces to the number curve", "[cam]") {
    // Hyperbolic calibration F(z) = -lambda/z with scale zero at pi; the
    // mirrored angle psi = pi - phi turns the curve into the number form with
    // b = l G / (C lambda).
    const double lambda = 0.7;
    mk::QuadrantSpec spec;
    spec.sensitivity = 1.3;
    spec.arm = 1.1;
    spec.weight = 0.9;
    spec.phi0 = kPi;
    spec.phi1 = 0.1;
    spec.phi2 = 3.0;
    spec.calibration = [=](double z) { return -lambda / z; };
    spec.calibration_rate = [=](double z) { return lambda / (z * z); };
    const double b = spec.arm * spec.weight / (spec.sensitivity * lambda);

    std::vector<double> psis;
    for (int deg = 20; deg <= 160; deg += 10) psis.push_back(deg * kPi / 180.0);
    std::vector<double> phis;
    for (auto it = psis.rbegin(); it != psis.rend(); ++it) phis.push_back(kPi - *it);

    const auto gen = mk::general_profile(spec, phis);
    const auto ref = mk::number_profile(b, psis);
    const std::size_t n = psis.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = gen.samples[n - 1 - i];
        CHECK(g.x == Catch::Approx(ref.samples[i].x).margin(1e-12));
        CHECK(g.y == Catch::Approx(ref.samples[i].y).margin(1e-12));
    }
}

TEST_CASE("general envelope with a smooth calibration", "[cam]") {
    mk::QuadrantSpec spec;
    spec.sensitivity = 2.0;
    spec.arm = 1.5;
    spec.weight = 1.2;
    spec.phi0 = 0.3;
    spec.phi1 = 0.5;
    spec.phi2 = 2.5;
    spec.calibration = [](double z) { return std::exp(z); };
    spec.calibration_rate = [](double z) { return std::exp(z); };

    // For F = exp both formulas collapse to lG e^{-z} trigonometric factors.
    const double phi = 1.0;
    const double z = (phi - spec.phi0) / spec.sensitivity;
    const double lg = spec.arm * spec.weight;
    const double s = std::sin(phi), c = std::cos(phi);
    const auto got = mk::general_profile(spec, {phi}).samples[0];
    CHECK(got.x ==
          Catch::Approx(lg * std::exp(-z) * s * s / spec.sensitivity).epsilon(1e-14));
    CHECK(got.y == Catch::Approx(lg * std::exp(-z) * (1.0 - s * c / spec.sensitivity))
                       .epsilon(1e-14));

    // Calibration crossing zero inside the sweep is a pole of the envelope.
    mk::QuadrantSpec bad = spec;
    bad.calibration = [](double z2) { return z2 - 0.35; };
    bad.calibration_rate = [](double) { return 1.0; };
    CHECK_THROWS_AS(mk::general_profile(bad, {phi}), std::domain_error);

    mk::QuadrantSpec zero_c = spec;
    zero_c.sensitivity = 0.0;
    CHECK_THROWS_AS(mk::general_profile(zero_c, {phi}), std::invalid_argument);
    CHECK_THROWS_AS(mk::general_profile(spec, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(mk::general_profile(spec, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("profile tangents follow the balance-line slope", "[cam]") {
    const double delta = 1e-6;

    // Weight curve: dy/dx = -ctg(phi).  Angles keep clear of sin(phi) = 0 and
    // of the stationary point tan(phi) = phi near 257 degrees.
    for (int deg : {20, 40, 60, 80, 90, 100, 120, 140, 160, 200, 220, 240, 280,
                    300, 320, 340}) {
        const double phi = deg * kPi / 180.0;
        const auto pts =
            mk::weight_profile(1.0, {phi - delta, phi, phi + delta}).samples;
        const double slope =
            (pts[2].y - pts[0].y) / (pts[2].x - pts[0].x);
        const double target = -1.0 / std::tan(phi);
        INFO("phi = " << deg << " deg");
        CHECK(std::fabs(slope - target) <= 1e-4 * (1.0 + std::fabs(target)));
    }

    // Number curve in the mirrored angle: dy/dx = +ctg(psi); psi = 90 is the
    // stationary point of x and is skipped.
    for (int deg : {20, 40, 60, 80, 100, 120, 140, 160}) {
        const double psi = deg * kPi / 180.0;
        const auto pts =
            mk::number_profile(1.0, {psi - delta, psi, psi + delta}).samples;
        const double slope =
            (pts[2].y - pts[0].y) / (pts[2].x - pts[0].x);
        const double target = 1.0 / std::tan(psi);
        INFO("psi = " << deg << " deg");
        CHECK(std::fabs(slope - target) <= 1e-4 * (1.0 + std::fabs(target)));
    }

    // The law is calibration-independent: exponential scale behaves the same.
    mk::QuadrantSpec spec;
    spec.sensitivity = 2.0;
    spec.arm = 1.5;
    spec.weight = 1.2;
    spec.phi0 = 0.3;
    spec.phi1 = 0.4;
    spec.phi2 = 2.8;
    spec.calibration = [](double z) { return std::exp(z); };
    spec.calibration_rate = [](double z) { return std::exp(z); };
    for (double phi : {0.6, 1.0, 1.4, 2.2, 2.6}) {
        const auto pts =
            mk::general_profile(spec, {phi - delta, phi, phi + delta}).samples;
        const double slope = (pts[2].y - pts[0].y) / (pts[2].x - pts[0].x);
        const double target = -1.0 / std::tan(phi);
        INFO("phi = " << phi);
        CHECK(std::fabs(slope - target) <= 1e-4 * (1.0 + std::fabs(target)));
    }
}

TEST_CASE("profiles scale similarly about the origin", "[cam]") {
    std::vector<double> phis;
    for (int deg = 10; deg <= 350; deg += 10) phis.push_back(deg * kPi / 180.0);
    const auto base = mk::weight_profile(0.7, phis);
    const auto doubled = mk::weight_profile(1.4, phis);
    for (std::size_t i = 0; i < phis.size(); ++i) {
        CHECK(doubled.samples[i].x == 2.0 * base.samples[i].x);
        CHECK(doubled.samples[i].y == 2.0 * base.samples[i].y);
    }

    std::vector<double> psis;
    for (int deg = 0; deg <= 180; deg += 10) psis.push_back(deg * kPi / 180.0);
    const auto nb = mk::number_profile(0.6, psis);
    const auto nt = mk::number_profile(1.8, psis);
    for (std::size_t i = 0; i < psis.size(); ++i) {
        CHECK(nt.samples[i].x == Catch::Approx(3.0 * nb.samples[i].x).epsilon(1e-15));
        CHECK(nt.samples[i].y == Catch::Approx(3.0 * nb.samples[i].y).epsilon(1e-15));
    }
}

TEST_CASE("ribbon weight bound", "[cam]") {
    CHECK(mk::ribbon_width_bound(1.0, 2.0, 0.25) == Catch::Approx(0.02));
    CHECK(mk::ribbon_width_bound(2.0, 2.0, 0.25) ==
          2.0 * mk::ribbon_width_bound(1.0, 2.0, 0.25));
    // Weight scale: M = 1/P1, so the bound grows with the smallest load.
    const double P1 = 0.5, E = 1.5, sigma = 0.4;
    CHECK(mk::ribbon_width_bound(E, 1.0 / P1, sigma) ==
          Catch::Approx(E * P1 / (100.0 * sigma)));
    CHECK_THROWS_AS(mk::ribbon_width_bound(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mk::ribbon_width_bound(1.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("cam input validation", "[cam]") {
    CHECK_THROWS_AS(mk::weight_profile(0.0, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(mk::weight_profile(1.0, {-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(mk::number_profile(1.0, {3.5}), std::invalid_argument);
    CHECK_THROWS_AS(mk::number_profile(-2.0, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(mk::number_profile(1.0, {0.5, 0.4}), std::invalid_argument);
}
