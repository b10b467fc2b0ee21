#include <doctest.h>

#include "subh/catalog.hpp"
#include "subh/trigconvex.hpp"
#include "subh/zeros.hpp"

using namespace subh;

TEST_SUITE("trigconvex") {

TEST_CASE("three-point sweep on reference profiles") {
    CHECK(is_rho_trig_convex(catalog_profile("const:1"), 1.0).holds);
    CHECK(is_rho_trig_convex(catalog_profile("cos"), 1.0).holds);
    CHECK(is_rho_trig_convex(catalog_profile("sin"), 1.0).holds);
    CHECK(is_rho_trig_convex(catalog_profile("abssin"), 1.0).holds);
    CHECK(is_rho_trig_convex(catalog_profile("2+0.5cos"), 1.0).holds);

    TrigConvexReport bad = is_rho_trig_convex(catalog_profile("const:-1"), 1.0);
    CHECK(!bad.holds);
    CHECK(bad.margin < 0);

    CHECK(!is_rho_trig_convex(catalog_profile("cos"), 2.0).holds);
    CHECK(is_rho_trig_convex(catalog_profile("abssin"), 2.0).holds);
}

TEST_CASE("very narrow admissible arcs are flagged") {
    TrigConvexReport r = is_rho_trig_convex(catalog_profile("const:-1"), 2000.0);
    CHECK(r.arc_too_coarse);
    CHECK(r.holds);  // no checkable triple
    CHECK(r.triples == 0);
}

TEST_CASE("defect of a constant is rho^2 times the constant") {
    DefectMeasure d = defect_measure(catalog_profile("const:1"), 1.0);
    CHECK(d.atoms.empty());
    CHECK(d.min_density() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.total() == doctest::Approx(2 * pi).epsilon(1e-9));
    CHECK(d.nonnegative(1e-6));

    DefectMeasure d2 = defect_measure(catalog_profile("const:2"), 2.0);
    CHECK(d2.min_density() == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("defect of cos at rho 1 vanishes") {
    DefectMeasure d = defect_measure(catalog_profile("cos"), 1.0);
    CHECK(d.atoms.empty());
    CHECK(std::fabs(d.min_density()) < 1e-6);
    CHECK(std::fabs(d.total()) < 1e-6);
}

TEST_CASE("defect of |sin| at rho 1 is two unit-jump atoms") {
    DefectMeasure d = defect_measure(catalog_profile("abssin"), 1.0);
    REQUIRE(d.atoms.size() == 2);
    CHECK(d.atoms[0].angle == doctest::Approx(0.0));
    CHECK(d.atoms[1].angle == doctest::Approx(pi));
    CHECK(d.atoms[0].mass == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(d.atoms[1].mass == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(d.min_density() > -1e-6);  // density part is ~0 away from the kinks
    CHECK(d.nonnegative(1e-6));
    // integral over an arc around one kink picks up one atom
    CHECK(d.arc_integral(-0.3, 0.3) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(d.total() == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("sampled profiles give the same defect structure") {
    std::vector<double> samples(256);
    for (int k = 0; k < 256; ++k) samples[k] = std::fabs(std::sin(2 * pi * k / 256));
    PeriodicProfile h = PeriodicProfile::from_samples(samples, "sampled-abssin");
    DefectMeasure d = defect_measure(h, 1.0);
    REQUIRE(d.atoms.size() == 2);
    CHECK(d.atoms[0].mass == doctest::Approx(2.0).epsilon(0.02));
    CHECK(d.atoms[1].mass == doctest::Approx(2.0).epsilon(0.02));
    CHECK(d.nonnegative(1e-3));

    std::vector<double> tiny(8, 1.0);
    CHECK_THROWS_AS(defect_measure(PeriodicProfile::from_samples(tiny, "tiny"), 1.0),
                    std::invalid_argument);
}

TEST_CASE("sweep and defect sign agree across the catalog") {
    for (const auto& h : acceptance_profiles()) {
        for (double rho : {0.5, 1.0, 2.0}) {
            bool sweep = is_rho_trig_convex(h, rho).holds;
            bool defect = defect_measure(h, rho).nonnegative(1e-6);
            INFO(h.name, " rho=", rho);
            CHECK(sweep == defect);
        }
    }
}

TEST_CASE("extension values, additivity, homogeneity") {
    ScalarField e = extend(catalog_profile("2+0.5cos"), 1.0);
    CHECK(e({0, 0}) == 0.0);
    CHECK(e({1, 0}) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(e({0, 2}) == doctest::Approx(4.0).epsilon(1e-12));

    PeriodicProfile a = catalog_profile("cos");
    PeriodicProfile b = catalog_profile("abssin");
    ScalarField ea = extend(a, 1.0);
    ScalarField eb = extend(b, 1.0);
    ScalarField eab = extend(a + b, 1.0);
    ScalarField sum = ea + eb;
    for (complexd z : {complexd(0.3, 0.4), complexd(-1.2, 0.7), complexd(0.01, -0.02)}) {
        CHECK(eab(z) == doctest::Approx(sum(z)).epsilon(1e-12));
        // positive homogeneity of order rho
        CHECK(ea(3.0 * z) == doctest::Approx(3.0 * ea(z)).epsilon(1e-12));
    }
}

TEST_CASE("extensions of passing profiles are subharmonic, failing ones are not") {
    GridSpec grid = GridSpec::centered(1.0 / 16, 24);  // [-1.5, 1.5]^2
    ScalarField good = extend(catalog_profile("abssin"), 1.0);
    CHECK(subharmonicity_check(good, grid, {}, 1e-6, 3).holds);
    ScalarField bad = extend(catalog_profile("const:-1"), 2.0);
    CHECK(!subharmonicity_check(bad, grid, {}, 1e-6, 3).holds);
}

TEST_CASE("lipschitz bounds hold for trig-convex profiles") {
    LipschitzReport r1 = lipschitz_bound_check(catalog_profile("cos"), 1.0, 2000);
    CHECK(r1.violations_plane == 0);
    CHECK(r1.violations_profile == 0);
    LipschitzReport r2 = lipschitz_bound_check(catalog_profile("const:1"), 2.0, 2000);
    CHECK(r2.violations_plane == 0);
    CHECK(r2.violations_profile == 0);
    CHECK_THROWS_AS(lipschitz_bound_check(catalog_profile("const:-1"), 1.0, 10),
                    std::invalid_argument);
}

TEST_CASE("polar riesz density factorizes radius and angle") {
    PolarRieszDensity d = riesz_density_polar(catalog_profile("const:1"), 2.0);
    // density 4/(2 pi) over the whole disk of radius 1: total 2
    CHECK(d.sector_mass(0, 1, 0, 2 * pi) == doctest::Approx(2.0).epsilon(1e-9));
    // radial factor (r1^rho - r0^rho)/rho
    CHECK(d.sector_mass(1, 2, 0, 2 * pi) == doctest::Approx((4.0 - 1.0) / 2.0 * 4.0).epsilon(1e-9));
    // an eighth of the circle takes an eighth of the mass (arc is a whole
    // number of sample steps, so the node sum is exact)
    CHECK(d.sector_mass(0, 1, 0, pi / 4) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK_THROWS_AS(riesz_density_polar(catalog_profile("const:-1"), 1.0),
                    std::invalid_argument);
}

TEST_CASE("grid riesz of an extension matches the polar density sector by sector") {
    // rho = 2 keeps the extension smooth at the origin, so the node-cell
    // masses track the continuum sector masses without an apex correction
    PolarRieszDensity pol = riesz_density_polar(catalog_profile("2+0.5cos"), 2.0);
    ScalarField e = extend(catalog_profile("2+0.5cos"), 2.0);
    GridSpec grid = GridSpec::centered(1.0 / 64, 70);  // covers |z| <= 1 with margin
    DiscreteMeasure mu = discrete_riesz(e, grid);
    double total = 0;
    for (int k = 0; k < 8; ++k) {
        double a0 = -pi / 8 + k * pi / 4;
        double pm = pol.sector_mass(0, 1, a0, a0 + pi / 4);
        double gm = mu.mass_in_half_open(Region{SectorRegion{0, 1, a0, a0 + pi / 4}});
        CHECK(gm == doctest::Approx(pm).epsilon(0.03));
        total += gm;
    }
    // sectors partition the disk, so the pieces add up to the disk mass
    CHECK(total == doctest::Approx(mu.mass_in(DiskRegion{{0, 0}, 1})).epsilon(0.01));
}

TEST_CASE("complementability of profile differences") {
    PeriodicProfile g = catalog_profile("const:1");
    PeriodicProfile h = catalog_profile("2+0.5cos");
    CHECK(complementable(h, 4.0 * g, 1.0).holds);
    CHECK(complementable(h, 3.01 * g, 1.0).holds);
    ComplementReport bad = complementable(h, 1.0 * g, 1.0);
    CHECK(!bad.holds);
    CHECK(bad.min_density == doctest::Approx(-1.0).epsilon(1e-6));
    // identical profiles: zero defect is still nonnegative
    CHECK(complementable(h, h, 1.0).holds);
}

TEST_CASE("q threshold closed form and contract") {
    PeriodicProfile g = catalog_profile("const:1");
    PeriodicProfile h = catalog_profile("2+0.5cos");
    double q = q_threshold(g, h, 1.0, 0.0, 0.5);
    CHECK(q == 3.0);  // (0.5 + 2.5) / 1, exact in floating point
    for (double qq : {3.01, 4.0, 10.0}) CHECK(complementable(h, qq * g, 1.0).holds);
    CHECK_THROWS_AS(q_threshold(catalog_profile("const:-1"), h, 1.0, 0.0, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(q_threshold(g, h, 1.0, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("bullet conditions for the threshold contract") {
    PeriodicProfile g = catalog_profile("const:1");
    PeriodicProfile h = catalog_profile("2+0.5cos");
    BulletReport b = verify_bullet_conditions(g, h, 1.0, 0.5, 0.5);
    CHECK(b.bullet1);
    CHECK(b.bullet2);
    CHECK(b.bullet3);
    CHECK(b.min_g_pair_sum == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(b.sup_h_second == doctest::Approx(0.5).epsilon(1e-3));

    // c = 0 violates 0 < c
    BulletReport b0 = verify_bullet_conditions(g, h, 1.0, 0.0, 0.5);
    CHECK(!b0.bullet1);
    // C too small for the curvature of h
    BulletReport b1 = verify_bullet_conditions(g, h, 1.0, 0.5, 0.1);
    CHECK(!b1.bullet3);
    // a kinked h has unbounded second derivative
    BulletReport b2 = verify_bullet_conditions(g, catalog_profile("abssin"), 1.0, 0.5, 100.0);
    CHECK(!b2.bullet3);
}

}  // TEST_SUITE
