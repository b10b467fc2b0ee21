#include <doctest.h>

#include "subh/catalog.hpp"
#include "subh/expr.hpp"
#include "subh/lifting.hpp"

using namespace subh;

TEST_SUITE("lifting") {

TEST_CASE("gauge values") {
    Domain disk = Domain::unit_disk();
    Gauge half = Gauge::half_distance();
    CHECK(gauge_value(half, disk, {0, 0}) == doctest::Approx(0.5));
    CHECK(gauge_value(half, disk, {0.3, 0}) == doctest::Approx(0.35));
    CHECK_THROWS_AS(gauge_value(half, disk, {1.5, 0}), std::domain_error);

    Gauge plane = Gauge::plane_power(2.0);
    CHECK(gauge_value(plane, Domain::whole_plane(), {0, 0}) == doctest::Approx(1.0));
    CHECK(gauge_value(plane, Domain::whole_plane(), {3, 0}) == doctest::Approx(1.0 / 16));
    CHECK_THROWS_AS(Gauge::plane_power(0.0), std::invalid_argument);

    // the half-distance gauge saturates at distance 1
    Domain big = Domain::rectangle(-10, 10, -10, 10);
    CHECK(gauge_value(half, big, {0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("bounded lift of the zero weight is the log penalty") {
    ScalarField zero = constant_field(0.0, Domain::unit_disk());
    CHECK(lift_bounded_value(zero, {0, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("bounded lift of a constant adds the penalty to the constant") {
    ScalarField c = constant_field(0.3, Domain::unit_disk());
    CHECK(lift_bounded_value(c, {0.3, 0}) ==
          doctest::Approx(0.3 + std::log(1.0 / 0.35)).epsilon(1e-12));
}

TEST_CASE("bounded lift of log|z| at the origin") {
    ScalarField logz = parse_field("log(abs(z))");
    logz.domain = Domain::unit_disk();
    // B(0, 1/2; log|.|) + ln 2 = (ln(1/2) - 1/2) + ln 2 = -1/2
    CHECK(lift_bounded_value(logz, {0, 0}) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("plane lift of |z|^2 at the origin") {
    ScalarField abs2 = catalog_field("abs2");
    CHECK(lift_plane_value(abs2, 1.0, {0, 0}) == doctest::Approx(0.5).epsilon(1e-9));
    // radius shrinks with |z|: value stays near |z|^2 for large |z|
    double far = lift_plane_value(abs2, 1.0, {3, 0});
    CHECK(far == doctest::Approx(9.0 + 1.0 / 32).epsilon(1e-6));
}

TEST_CASE("lift is monotone in the weight") {
    ScalarField small = constant_field(0.0, Domain::unit_disk());
    ScalarField large = parse_field("pow(abs(z),2)");
    large.domain = Domain::unit_disk();
    for (complexd z : {complexd(0, 0), complexd(0.4, 0.2)}) {
        CHECK(lift_bounded_value(small, z) <= lift_bounded_value(large, z) + 1e-12);
    }
}

TEST_CASE("materialized lifts sample the pointwise lift") {
    ScalarField zero = constant_field(0.0, Domain::unit_disk());
    GridSpec grid(-0.5, 0.5, -0.5, 0.5, 5, 5);
    ScalarField lifted = lift_bounded(zero, grid);
    CHECK(lifted({0, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(lifted({0.5, 0}) == doctest::Approx(std::log(4.0)).epsilon(1e-9));

    ScalarField abs2 = catalog_field("abs2");
    ScalarField pl = lift_plane(abs2, 1.0, grid);
    CHECK(pl({0, 0}) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("domain kind mismatches are rejected") {
    ScalarField planef = catalog_field("abs2");
    GridSpec grid(-0.5, 0.5, -0.5, 0.5, 5, 5);
    CHECK_THROWS_AS(lift_bounded(planef, grid), std::invalid_argument);
    ScalarField diskf = constant_field(0.0, Domain::unit_disk());
    CHECK_THROWS_AS(lift_plane(diskf, 1.0, grid), std::invalid_argument);
}

TEST_CASE("lift dominates the weight for subharmonic weights") {
    // N <= B(z,d;N) <= N^ with the log penalty nonnegative (d <= 1)
    ScalarField abs2 = catalog_field("abs2");
    abs2.domain = Domain::unit_disk();
    for (complexd z : {complexd(0, 0), complexd(0.2, 0.5), complexd(-0.6, 0.1)}) {
        CHECK(lift_bounded_value(abs2, z) >= abs2(z) - 1e-10);
    }
}

}  // TEST_SUITE
