#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "subh/io.hpp"
#include "subh/measure.hpp"

using namespace subh;

TEST_SUITE("measure") {

TEST_CASE("region membership closed vs half-open") {
    Region box{RectRegion{0, 1, 0, 1}};
    CHECK(region_contains(box, {1, 1}));
    CHECK(!region_contains_half_open(box, {1, 0.5}));
    CHECK(region_contains_half_open(box, {0, 0}));

    Region disk{DiskRegion{{0, 0}, 1}};
    CHECK(region_contains(disk, {1, 0}));
    CHECK(!region_contains_half_open(disk, {1, 0}));

    Region sector{SectorRegion{0, 1, -0.1, 0.1}};
    CHECK(region_contains(sector, {0.5, 0}));
    CHECK(!region_contains(sector, {0, 0.5}));
    CHECK(region_contains(sector, {0, 0}));  // apex belongs to the closed sector
    CHECK(region_area(Region{SectorRegion{0, 1, 0, 2 * pi}}) == doctest::Approx(pi));
}

TEST_CASE("counting measure respects multiplicity and closed boundaries") {
    ZeroSequence zs({{complexd(0, 0), 2}, {complexd(0.5, 0), 1}, {complexd(0.9, 0.9), 1}});
    CHECK(counting_measure(zs, Region{DiskRegion{{0, 0}, 0.5}}) == 3);  // 0.5 on the rim counts
    CHECK(counting_measure(zs, Region{RectRegion{-0.1, 0.1, -0.1, 0.1}}) == 2);
    CHECK(counting_measure(zs, Region{RectRegion{10, 11, 10, 11}}) == 0);

    DiscreteMeasure atoms = counting_measure_atoms(zs);
    CHECK(atoms.total_mass() == doctest::Approx(4.0));
}

TEST_CASE("counting is additive over a half-open partition") {
    ZeroSequence zs({{complexd(0.5, 0.5), 1}, {complexd(0.5, 0.0), 2}, {complexd(0, 0), 1}});
    DiscreteMeasure atoms = counting_measure_atoms(zs);
    double total = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            RectRegion cell{-1 + 0.5 * i, -1 + 0.5 * (i + 1), -1 + 0.5 * j, -1 + 0.5 * (j + 1)};
            total += atoms.mass_in_half_open(Region{cell});
        }
    CHECK(total == doctest::Approx(4.0));
}

TEST_CASE("measure_geq of a measure against itself holds with zero margin") {
    DiscreteMeasure nu;
    nu.cells.push_back({Region{RectRegion{0, 0.5, 0, 0.5}}, 1.0});
    nu.cells.push_back({Region{RectRegion{0.5, 1, 0, 0.5}}, 0.25});
    nu.atoms.push_back({{0.25, 0.25}, 2.0});
    GridSpec partition(0, 1, 0, 1, 5, 5);
    MeasureCompareReport rep = measure_geq(nu, nu, partition, 1e-12);
    CHECK(rep.holds);
    CHECK(rep.margin == 0.0);
    CHECK(rep.cells == 16);
}

TEST_CASE("measure_geq reports the deficient cell") {
    DiscreteMeasure nu, mu;
    nu.cells.push_back({Region{RectRegion{0, 0.5, 0, 0.5}}, 1.0});
    mu.cells.push_back({Region{RectRegion{0, 0.5, 0, 0.5}}, 1.5});
    GridSpec partition(0, 1, 0, 1, 3, 3);
    MeasureCompareReport rep = measure_geq(nu, mu, partition, 1e-9);
    CHECK(!rep.holds);
    CHECK(rep.margin == doctest::Approx(-0.5));
    CHECK(rep.worst_cell.x0 == doctest::Approx(0.0));
    CHECK(rep.worst_cell.x1 == doctest::Approx(0.5));
}

TEST_CASE("measure_geq warns when a cell mixes atoms of both measures") {
    DiscreteMeasure nu, mu;
    nu.atoms.push_back({{0.1, 0.1}, 1.0});
    mu.atoms.push_back({{0.2, 0.2}, 1.0});
    GridSpec partition(0, 1, 0, 1, 2, 2);
    MeasureCompareReport rep = measure_geq(nu, mu, partition, 1e-9);
    CHECK(rep.holds);
    CHECK(rep.coarse_warning);
}

TEST_CASE("validate rejects negative masses") {
    DiscreteMeasure m;
    m.cells.push_back({Region{RectRegion{0, 1, 0, 1}}, -0.5});
    CHECK_THROWS_AS(m.validate(1e-9), std::invalid_argument);
    m.cells[0].mass = -1e-12;
    CHECK_NOTHROW(m.validate(1e-9));
}

TEST_CASE("measure csv output is stable") {
    DiscreteMeasure m;
    m.cells.push_back({Region{RectRegion{0, 1, 0, 1}}, 0.5});
    m.cells.push_back({Region{SectorRegion{0, 1, 0, pi}}, 0.25});
    m.atoms.push_back({{0.5, -0.5}, 2});
    std::ostringstream s1, s2;
    io::write_measure_csv(s1, m);
    io::write_measure_csv(s2, m);
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("cell,0,1,0,1,0.5") != std::string::npos);
    CHECK(s1.str().find("atom,0.5,-0.5,2") != std::string::npos);
}

TEST_CASE("zeros csv round-trips") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "subh_measure_io";
    fs::create_directories(dir);
    fs::path file = dir / "zeros.csv";
    ZeroSequence zs({{complexd(0.25, -0.5), 2}, {complexd(0, 0), 1}});
    {
        std::ofstream out(file);
        io::write_zeros_csv(out, zs);
    }
    ZeroSequence back = io::read_zeros_csv(file.string());
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[1].point == complexd(0.25, -0.5));
    CHECK(back.entries[1].multiplicity == 2);

    {
        std::ofstream out(file);
        out << "x,y,m\n0,0,1\n";
    }
    CHECK_THROWS_AS(io::read_zeros_csv(file.string()), std::runtime_error);
    CHECK_THROWS_AS(io::read_zeros_csv((dir / "missing.csv").string()), std::runtime_error);
}

TEST_CASE("inline zeros parsing") {
    ZeroSequence zs = io::parse_zeros_inline("0,0,2; 0.5,0.25");
    REQUIRE(zs.entries.size() == 2);
    CHECK(zs.total_multiplicity() == 3);
    CHECK_THROWS_AS(io::parse_zeros_inline("0,0,0"), std::runtime_error);
    CHECK_THROWS_AS(io::parse_zeros_inline("1"), std::runtime_error);
}

}  // TEST_SUITE
