#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "subh/field.hpp"
#include "subh/grid.hpp"
#include "subh/io.hpp"
#include "subh/lifting.hpp"
#include "subh/measure.hpp"
#include "subh/profile.hpp"
#include "subh/zeros.hpp"

namespace subh {

// Scenario harness: each check certifies a chain of inequalities on grid
// nodes, solving for the smallest admissible additive constant and comparing
// it against the allowance declared in the scenario.

struct StageResult {
    std::string name;
    bool passed = true;
    double margin = 0;  // worst slack; >= -tol when the stage passes
    complexd worst{0, 0};
    std::string note;
};

struct CheckReport {
    std::string check;
    bool passed = true;
    double computed_const = neg_inf;  // smallest admissible constant, when meaningful
    std::vector<StageResult> stages;
};

struct Scenario {
    std::string check;  // forward | converse | prop1 | prop2 | theorem2
    Domain domain = Domain::unit_disk();
    ZeroSequence zeros;

    ScalarField N;
    ScalarField M;
    ScalarField witness;  // v for converse / prop checks, log|h| for forward
    ScalarField logh;     // candidate log-modulus for prop1/prop2
    bool has_N = false, has_M = false, has_witness = false, has_logh = false;

    double allowed_const = 0;
    GridSpec grid = GridSpec::centered(1.0 / 32, 31);
    GridSpec partition = GridSpec(-0.95, 0.95, -0.95, 0.95, 17, 17);
    Gauge gauge = Gauge::half_distance();

    double rho = 1.0;
    PeriodicProfile h1, h2;
    bool has_profiles = false;
    int sectors = 20;
    double rmax = 1.0;

    double tol = 1e-9;
    double measure_tol = 1e-3;
    long subgrid_cap = 2000;
};

// Builds a Scenario from a parsed key-value file; resolves field strings via
// the catalog / CSV / expression rules and zero lists via CSV or inline text.
Scenario scenario_from_file(const io::ScenarioFile& file);

CheckReport check_forward(const Scenario& sc);
CheckReport check_converse_inequality(const Scenario& sc);
CheckReport check_prop1_bound(const Scenario& sc);
CheckReport check_prop2_bound(const Scenario& sc);
CheckReport check_theorem2_measure(const Scenario& sc);

// Dispatch on sc.check.
CheckReport run_check(const Scenario& sc);

void print_report(std::ostream& out, const CheckReport& report);

}  // namespace subh
