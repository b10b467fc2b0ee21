#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "subh/cli.hpp"

using namespace subh;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

std::filesystem::path tmp(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / "subh_cli_tests";
    std::filesystem::create_directories(d);
    return d / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("avg prints the closed-form average of |z|^2") {
    CliRun r = run({"avg", "--field", "abs2", "--radius", "0.5"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "command avg"));
    CHECK(has_line(r.out, "value 0.125\n"));
    CHECK(has_line(r.out, "converged true"));
    // timing goes to stderr so stdout stays reproducible
    CHECK(!has_line(r.out, "wall_ms"));
    CHECK(has_line(r.err, "wall_ms"));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"avg", "--field", "abs2"}).code == 2);       // missing --radius
    CHECK(run({"frobnicate"}).code == 2);                   // unknown subcommand
    CHECK(run({}).code == 2);                               // no subcommand
    CliRun bad = run({"avg", "--field", "frob(z)", "--radius", "0.5"});
    CHECK(bad.code == 2);
    CHECK(has_line(bad.err, "error:"));
}

TEST_CASE("help exits cleanly") {
    CliRun r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "Usage"));
    CHECK(has_line(r.out, "CSV columns"));
}

TEST_CASE("tc-check reflects convexity in the exit code") {
    CliRun good = run({"tc-check", "--profile", "const:1", "--rho", "1"});
    CHECK(good.code == 0);
    CHECK(has_line(good.out, "holds true"));
    CliRun bad = run({"tc-check", "--profile", "const:-1", "--rho", "1"});
    CHECK(bad.code == 1);
    CHECK(has_line(bad.out, "holds false"));
}

TEST_CASE("tc-defect lists atoms and writes the density CSV") {
    auto out_path = tmp("defect.csv");
    CliRun r = run({"tc-defect", "--profile", "abssin", "--rho", "1", "--out",
                    out_path.string()});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "atoms 2"));
    CHECK(has_line(r.out, "\natom 0 "));
    std::string csv = slurp(out_path);
    CHECK(csv.rfind("theta,density\n", 0) == 0);
    CHECK(has_line(csv, "# atom 0 "));
}

TEST_CASE("tc-extend samples the homogeneous extension") {
    CliRun r = run({"tc-extend", "--profile", "const:1", "--rho", "2", "--grid=-1,1,-1,1,5,5"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "min 0\n"));
    CHECK(has_line(r.out, "max 2\n"));
}

TEST_CASE("riesz reports the measure and writes cells") {
    auto out_path = tmp("riesz.csv");
    CliRun r = run({"riesz", "--field", "log(abs(z))", "--grid=-0.5,0.5,-0.5,0.5,9,9",
                    "--out", out_path.string()});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "atoms 0"));  // counting mass lands in the cell, not an atom row
    std::string csv = slurp(out_path);
    CHECK(csv.rfind("cell,", 0) == 0);
}

TEST_CASE("checksubh splits subharmonic from not") {
    CliRun good = run({"checksubh", "--field", "abs2", "--grid=-1,1,-1,1,17,17"});
    CHECK(good.code == 0);
    CHECK(has_line(good.out, "holds true"));
    CliRun bad = run({"checksubh", "--field", "-pow(abs(z),2)", "--grid=-1,1,-1,1,17,17"});
    CHECK(bad.code == 1);
    CHECK(has_line(bad.out, "holds false"));
}

TEST_CASE("lift materializes on an inscribed grid") {
    CliRun r = run({"lift", "--field", "abs2", "--grid=-0.7,0.7,-0.7,0.7,15,15"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "nodes 225"));
    CHECK(has_line(r.out, "domain unit-disk"));
}

TEST_CASE("tc-qbound prints the exact threshold") {
    CliRun r = run({"tc-qbound", "--g", "const:1", "--h", "2+0.5cos", "--rho", "1", "--c",
                    "0.5", "--C", "0.5"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "q_threshold 6\n"));
    CHECK(has_line(r.out, "bullet1 true"));
    CHECK(has_line(r.out, "bullet2 true"));
    CHECK(has_line(r.out, "bullet3 true"));
}

TEST_CASE("catalog list and show") {
    CliRun list = run({"catalog", "list"});
    CHECK(list.code == 0);
    CHECK(has_line(list.out, "fields:"));
    CHECK(has_line(list.out, "profiles:"));
    CHECK(has_line(list.out, "abssin"));

    CliRun c1 = run({"catalog", "show", "const:1"});
    CHECK(c1.code == 0);
    CHECK(has_line(c1.out, "profile == 1"));

    CliRun re = run({"catalog", "show", "re"});
    CHECK(re.code == 0);
    CHECK(has_line(re.out, "Re z, harmonic"));

    CHECK(run({"catalog", "show", "frob"}).code == 2);
}

TEST_CASE("verify runs a scenario file end to end") {
    auto sc_path = tmp("cli_converse.txt");
    {
        std::ofstream f(sc_path);
        f << "check converse\n"
             "domain disk\n"
             "zeros inline:0,0,1\n"
             "N log(abs(z))+1\n"
             "witness 0\n";
    }
    auto out_path = tmp("cli_converse.csv");
    CliRun r = run({"verify", "--scenario", sc_path.string(), "--out", out_path.string()});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "check converse: PASS"));
    std::string csv = slurp(out_path);
    CHECK(csv.rfind("stage,passed,margin,worst_re,worst_im\n", 0) == 0);
    CHECK(has_line(csv, "pointwise,1,"));

    CHECK(run({"verify", "--scenario", tmp("missing.txt").string()}).code == 2);
}

TEST_CASE("stdout is byte-identical across repeated runs") {
    std::vector<std::string> cmd = {"avg", "--field", "potential:0.3,0.4,2", "--center",
                                    "0.1,0.1", "--radius", "0.25"};
    CliRun a = run(cmd);
    CliRun b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    CliRun d1 = run({"tc-defect", "--profile", "cos+abssin", "--rho", "1"});
    CliRun d2 = run({"tc-defect", "--profile", "cos+abssin", "--rho", "1"});
    CHECK(d1.out == d2.out);
}

}  // TEST_SUITE
