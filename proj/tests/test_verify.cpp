#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "subh/verify.hpp"

using namespace subh;

namespace {

std::filesystem::path scenario_dir() {
    auto d = std::filesystem::temp_directory_path() / "subh_verify_tests";
    std::filesystem::create_directories(d);
    return d;
}

Scenario load(const std::string& name, const std::string& text) {
    auto p = scenario_dir() / name;
    std::ofstream out(p);
    out << text;
    out.close();
    return scenario_from_file(io::read_scenario(p.string()));
}

const StageResult& stage(const CheckReport& rep, const std::string& name) {
    for (const auto& st : rep.stages)
        if (st.name == name) return st;
    REQUIRE_MESSAGE(false, "missing stage ", name);
    return rep.stages.front();
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("forward check certifies the full chain") {
    Scenario sc = load("forward_pass.txt",
                       "check forward\n"
                       "domain disk\n"
                       "zeros inline:0,0,1\n"
                       "N log(abs(z))\n"
                       "M log(abs(z))+pow(abs(z),2)\n"
                       "grid -0.9375,0.9375,-0.9375,0.9375,121,121\n");
    CheckReport rep = run_check(sc);
    CHECK(rep.check == "forward");
    CHECK(rep.passed);
    REQUIRE(rep.stages.size() == 4);
    CHECK(rep.stages[0].name == "premise-subharmonic");
    CHECK(rep.stages[1].name == "hypothesis");
    CHECK(rep.stages[2].name == "pointwise-chain");
    CHECK(rep.stages[3].name == "submeasure");
    // log|f| + 0 against N is an identity on the nodes, so the smallest
    // admissible constant is zero to the last bit
    CHECK(std::fabs(rep.computed_const) <= 1e-12);
    CHECK(stage(rep, "premise-subharmonic").margin > 0);  // |z|^2 is strictly sub-mean
    CHECK(stage(rep, "submeasure").margin >= -1e-3);
    CHECK(stage(rep, "submeasure").note.find("cells") != std::string::npos);
}

TEST_CASE("forward check reports the violating constant") {
    Scenario sc = load("forward_fail.txt",
                       "check forward\n"
                       "domain disk\n"
                       "zeros inline:0,0,1\n"
                       "N 2*log(abs(z))\n"
                       "grid -0.9375,0.9375,-0.9375,0.9375,121,121\n");
    CheckReport rep = run_check(sc);
    CHECK(!rep.passed);
    CHECK(!stage(rep, "hypothesis").passed);
    CHECK(stage(rep, "premise-subharmonic").passed);
    // worst node of ln|z| - 2 ln|z| sits next to the zero, one step away
    CHECK(rep.computed_const == doctest::Approx(std::log(64.0)).epsilon(1e-9));
    // the chain stage reuses the computed constant and closes with it
    CHECK(stage(rep, "pointwise-chain").passed);
}

TEST_CASE("converse check solves for a negative constant") {
    Scenario sc = load("converse_pass.txt",
                       "check converse\n"
                       "domain disk\n"
                       "zeros inline:0,0,1\n"
                       "N log(abs(z))+1\n"
                       "witness 0\n");
    CheckReport rep = run_check(sc);
    CHECK(rep.passed);
    REQUIRE(rep.stages.size() == 4);
    CHECK(rep.stages[0].name == "witness-subharmonic");
    CHECK(rep.stages[1].name == "pointwise");
    CHECK(rep.stages[2].name == "averaged");
    CHECK(rep.stages[3].name == "membership");
    CHECK(rep.computed_const == doctest::Approx(-1.0).epsilon(1e-9));
    for (const auto& st : rep.stages) CHECK(st.passed);
}

TEST_CASE("converse check fails on a witness that is too large") {
    Scenario sc = load("converse_fail.txt",
                       "check converse\n"
                       "domain disk\n"
                       "zeros inline:0,0,1\n"
                       "N log(abs(z))\n"
                       "witness abs2\n");
    CheckReport rep = run_check(sc);
    CHECK(!rep.passed);
    CHECK(stage(rep, "witness-subharmonic").passed);
    CHECK(!stage(rep, "pointwise").passed);
    // largest |z|^2 over grid nodes interior to the disk (step 1/32)
    CHECK(rep.computed_const == doctest::Approx(1021.0 / 1024.0).epsilon(1e-12));
    // downstream stages run against the computed constant and stay consistent
    CHECK(stage(rep, "averaged").passed);
    CHECK(stage(rep, "membership").passed);
}

TEST_CASE("converse check rejects a witness with no finite values") {
    Scenario sc = load("converse_degenerate.txt",
                       "check converse\n"
                       "domain disk\n"
                       "zeros inline:0,0,1\n"
                       "N log(abs(z))\n"
                       "witness log(abs(0*z))\n");
    CHECK_THROWS_AS(run_check(sc), std::invalid_argument);
}

TEST_CASE("prop1 bound with the half-distance gauge") {
    Scenario pass = load("prop1_pass.txt",
                         "check prop1\n"
                         "domain disk\n"
                         "logh 0\n"
                         "witness 0\n");
    CheckReport rp = run_check(pass);
    CHECK(rp.check == "prop1");
    CHECK(rp.passed);
    // margin at least log 2: the gauge radius never exceeds 1/2
    CHECK(stage(rp, "pointwise-bound").margin >= std::log(2.0) - 1e-6);

    Scenario tight = load("prop1_tight.txt",
                          "check prop1\n"
                          "domain disk\n"
                          "logh log(abs(z))\n"
                          "witness log(abs(z))\n");
    CHECK(run_check(tight).passed);

    Scenario fail = load("prop1_fail.txt",
                         "check prop1\n"
                         "domain disk\n"
                         "logh 10+0*re(z)\n"
                         "witness 0\n");
    CheckReport rf = run_check(fail);
    CHECK(!rf.passed);
    CHECK(!stage(rf, "pointwise-bound").passed);
}

TEST_CASE("prop2 bound with the plane gauge") {
    Scenario eq = load("prop2_eq.txt",
                       "check prop2\n"
                       "domain plane\n"
                       "gauge plane\n"
                       "P 1\n"
                       "logh re\n"
                       "witness re\n");
    CheckReport re = run_check(eq);
    CHECK(re.check == "prop2");
    CHECK(re.passed);
    CHECK(stage(re, "pointwise-bound").margin >= -1e-7);

    Scenario strict = load("prop2_strict.txt",
                           "check prop2\n"
                           "domain plane\n"
                           "gauge plane\n"
                           "logh abs2\n"
                           "witness abs2\n");
    CheckReport rs = run_check(strict);
    CHECK(rs.passed);
    CHECK(stage(rs, "pointwise-bound").margin > 0.05);  // disk average adds d^2/2

    Scenario fail = load("prop2_fail.txt",
                         "check prop2\n"
                         "domain plane\n"
                         "gauge plane\n"
                         "logh abs2\n"
                         "witness 0\n");
    CHECK(!run_check(fail).passed);
}

TEST_CASE("theorem2 sector comparison on a smooth pair") {
    Scenario sc = load("theorem2_pass.txt",
                       "check theorem2\n"
                       "h1 const:1\n"
                       "h2 const:2\n"
                       "rho 2\n"
                       "grid -1.125,1.125,-1.125,1.125,145,145\n"
                       "sectors 8\n");
    CheckReport rep = run_check(sc);
    CHECK(rep.check == "theorem2");
    CHECK(rep.passed);
    REQUIRE(rep.stages.size() == 2);
    CHECK(rep.stages[0].name == "complementable");
    CHECK(rep.stages[1].name == "sector-match");
    // defect density of h2 - h1 = 1 at rho = 2 is exactly rho^2
    CHECK(stage(rep, "complementable").margin == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(stage(rep, "sector-match").margin >= 0);
    CHECK(stage(rep, "sector-match").note.find("grid") != std::string::npos);
}

TEST_CASE("theorem2 stops when the pair is not complementable") {
    Scenario sc = load("theorem2_fail.txt",
                       "check theorem2\n"
                       "h1 const:2\n"
                       "h2 const:1\n"
                       "rho 1\n"
                       "grid -1.125,1.125,-1.125,1.125,33,33\n");
    CheckReport rep = run_check(sc);
    CHECK(!rep.passed);
    REQUIRE(rep.stages.size() == 1);
    CHECK(!rep.stages[0].passed);
    CHECK(rep.stages[0].margin == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("scenario files are validated") {
    CHECK_THROWS_AS(load("bad_key.txt", "check forward\nfrobnicate 3\n"), std::runtime_error);
    CHECK_THROWS_AS(load("bad_domain.txt", "check forward\ndomain blob\nN re\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(load("bad_gauge.txt", "check forward\nN re\ngauge sideways\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(load("half_profiles.txt", "check theorem2\nh1 const:1\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(load("missing_n.txt", "check forward\nzeros none\n"), std::runtime_error);
    CHECK_THROWS_AS(load("no_check.txt", "domain disk\nN re\n"), std::runtime_error);
    CHECK_THROWS_AS(load("dup_key.txt", "check forward\nN re\nN im\n"), std::runtime_error);

    // missing candidate fields surface when the check runs
    Scenario p1 = load("prop1_missing.txt", "check prop1\nwitness 0\n");
    CHECK_THROWS_AS(run_check(p1), std::invalid_argument);
    Scenario t2 = load("theorem2_missing.txt", "check theorem2\n");
    CHECK_THROWS_AS(run_check(t2), std::invalid_argument);

    Scenario bogus;
    bogus.check = "bogus";
    CHECK_THROWS_AS(run_check(bogus), std::invalid_argument);
}

TEST_CASE("report printing is structured and stable") {
    Scenario sc = load("converse_print.txt",
                       "check converse\n"
                       "domain disk\n"
                       "zeros inline:0,0,1\n"
                       "N log(abs(z))+1\n"
                       "witness 0\n");
    CheckReport rep = run_check(sc);
    std::ostringstream os;
    print_report(os, rep);
    std::string text = os.str();
    CHECK(text.find("check converse: PASS") != std::string::npos);
    CHECK(text.find("computed const -1") != std::string::npos);
    CHECK(text.find("stage pointwise: PASS") != std::string::npos);
    CHECK(text.find("stage membership: ") != std::string::npos);
}

}  // TEST_SUITE
