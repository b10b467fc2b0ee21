#include "subh/verify.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <set>

#include "subh/catalog.hpp"
#include "subh/expr.hpp"
#include "subh/trigconvex.hpp"

namespace subh {

namespace {

// Fields resolved from expressions live on the whole plane; comparisons and
// lifts must see the scenario's domain instead.
ScalarField restrict_domain(ScalarField f, const Domain& dom) {
    if (f.domain.kind == DomainKind::Plane && dom.kind != DomainKind::Plane) f.domain = dom;
    return f;
}

int cap_stride(long count, long cap) {
    int s = 1;
    while (count / (static_cast<long>(s) * s) > cap) ++s;
    return s;
}

struct Sweep {
    double max_deficit = neg_inf;
    complexd worst{0, 0};
    long used = 0;
    bool infinite = false;
};

// Max over nodes of lhs - rhs under the -inf conventions: a -inf left side
// satisfies any right side; a finite left side against a -inf right side is an
// unconditional violation.
template <class L, class R>
Sweep sweep_deficit(const GridSpec& grid, const Domain& dom, int stride, L&& lhs, R&& rhs) {
    Sweep s;
    for (int j = 0; j < grid.ny; j += stride) {
        for (int i = 0; i < grid.nx; i += stride) {
            complexd z = grid.node(i, j);
            if (!dom.contains(z)) continue;
            std::optional<double> l = lhs(z);
            if (!l || is_neg_inf(*l)) continue;
            std::optional<double> r = rhs(z);
            if (!r) continue;
            ++s.used;
            if (is_neg_inf(*r)) {
                s.infinite = true;
                s.max_deficit = pos_inf;
                s.worst = z;
                return s;
            }
            double d = *l - *r;
            if (d > s.max_deficit) {
                s.max_deficit = d;
                s.worst = z;
            }
        }
    }
    return s;
}

auto field_eval(const ScalarField& f) {
    return [&f](complexd z) -> std::optional<double> {
        if (!f.domain.contains(z)) return std::nullopt;
        return f(z);
    };
}

StageResult subharmonic_stage(const std::string& name, const ScalarField& f,
                              const Scenario& sc) {
    double tol = std::max(sc.tol, 1e-7);
    int stride = cap_stride(sc.grid.node_count(), sc.subgrid_cap);
    SubharmonicityReport r =
        subharmonicity_check(restrict_domain(f, sc.domain), sc.grid, {}, tol, stride);
    StageResult st{name, r.holds, r.margin, r.worst_node, ""};
    st.note = "radius " + fmt(r.worst_radius) + ", " + std::to_string(r.checks) +
              " checks, stride " + std::to_string(r.stride);
    return st;
}

complexd rect_center(const RectRegion& r) {
    return {(r.x0 + r.x1) / 2, (r.y0 + r.y1) / 2};
}

}  // namespace

CheckReport check_forward(const Scenario& sc) {
    CheckReport rep;
    rep.check = "forward";
    ScalarField logf = potential_field(sc.zeros);
    ScalarField witness = sc.has_witness ? sc.witness : constant_field(0.0);
    ScalarField M = sc.has_M ? sc.M : sc.N;
    ScalarField sMN = sc.has_M ? sc.M - sc.N : constant_field(0.0);

    rep.stages.push_back(subharmonic_stage("premise-subharmonic", sMN, sc));

    // smallest const with log|f| + log|h| <= N + const on the nodes
    ScalarField hyp_lhs = logf + witness;
    Sweep s1 = sweep_deficit(sc.grid, sc.domain, 1, field_eval(hyp_lhs), field_eval(sc.N));
    rep.computed_const = s1.used == 0 ? neg_inf : s1.max_deficit;
    {
        StageResult st{"hypothesis", !s1.infinite && rep.computed_const <= sc.allowed_const + sc.tol,
                       sc.allowed_const - rep.computed_const, s1.worst, ""};
        st.note = "const " + fmt(rep.computed_const) + " allowed " + fmt(sc.allowed_const);
        rep.stages.push_back(st);
    }

    // the same const must close the chain log|f| + (M-N) + log|h| <= M
    double allowance = rep.computed_const == neg_inf ? sc.allowed_const : rep.computed_const;
    ScalarField chain_lhs = hyp_lhs + sMN;
    Sweep s2 = sweep_deficit(sc.grid, sc.domain, 1, field_eval(chain_lhs), field_eval(M));
    {
        double maxd = s2.used == 0 ? neg_inf : s2.max_deficit;
        StageResult st{"pointwise-chain", !s2.infinite && maxd <= allowance + sc.tol,
                       allowance - maxd, s2.worst, ""};
        rep.stages.push_back(st);
    }

    // cellwise: riesz(log|f| + (M-N)) >= counting(zeros) + riesz(M-N)
    {
        RieszOptions opt;
        opt.atom_correction_radius = 0.05;
        DiscreteMeasure nu = discrete_riesz(logf + sMN, sc.grid, opt);
        DiscreteMeasure mu = counting_measure_atoms(sc.zeros) + discrete_riesz(sMN, sc.grid, opt);
        MeasureCompareReport mg = measure_geq(nu, mu, sc.partition, sc.measure_tol);
        StageResult st{"submeasure", mg.holds, mg.margin, rect_center(mg.worst_cell), ""};
        st.note = std::to_string(mg.cells) + " cells";
        if (mg.coarse_warning) st.note += ", coarse: a cell holds atoms of both measures";
        rep.stages.push_back(st);
    }

    for (const auto& st : rep.stages) rep.passed = rep.passed && st.passed;
    return rep;
}

CheckReport check_converse_inequality(const Scenario& sc) {
    CheckReport rep;
    rep.check = "converse";
    if (!sc.has_witness) throw std::invalid_argument("converse check needs a witness field");
    ScalarField logf = potential_field(sc.zeros);

    // a witness that is -inf at every node certifies nothing
    bool finite_somewhere = false;
    for (int j = 0; j < sc.grid.ny && !finite_somewhere; ++j)
        for (int i = 0; i < sc.grid.nx && !finite_somewhere; ++i) {
            complexd z = sc.grid.node(i, j);
            if (!sc.domain.contains(z) || !sc.witness.domain.contains(z)) continue;
            if (!is_neg_inf(sc.witness(z))) finite_somewhere = true;
        }
    if (!finite_somewhere)
        throw std::invalid_argument("degenerate witness: identically -inf on the grid");

    rep.stages.push_back(subharmonic_stage("witness-subharmonic", sc.witness, sc));

    ScalarField lhs = logf + sc.witness;
    Sweep s1 = sweep_deficit(sc.grid, sc.domain, 1, field_eval(lhs), field_eval(sc.N));
    rep.computed_const = s1.used == 0 ? neg_inf : s1.max_deficit;
    {
        StageResult st{"pointwise", !s1.infinite && rep.computed_const <= sc.allowed_const + sc.tol,
                       sc.allowed_const - rep.computed_const, s1.worst, ""};
        st.note = "const " + fmt(rep.computed_const) + " allowed " + fmt(sc.allowed_const);
        rep.stages.push_back(st);
    }
    double allowance = rep.computed_const == neg_inf ? sc.allowed_const : rep.computed_const;
    double avg_tol = std::max(sc.tol, 1e-6);

    // averaging the certified inequality keeps it, with the same const
    int stride = cap_stride(sc.grid.node_count(), 400);
    auto gauge_radius = [&](complexd z) { return gauge_value(sc.gauge, sc.domain, z); };
    auto avg_ok = [&](const ScalarField& f, complexd z, double d) {
        return f.domain.contains_disk(z, d);
    };
    Sweep s2 = sweep_deficit(
        sc.grid, sc.domain, stride,
        [&](complexd z) -> std::optional<double> {
            double d = gauge_radius(z);
            if (d <= 0 || !avg_ok(logf, z, d) || !avg_ok(sc.witness, z, d)) return std::nullopt;
            double a = disk_average(logf, z, d);
            double b = disk_average(sc.witness, z, d);
            if (is_neg_inf(a) || is_neg_inf(b)) return neg_inf;
            return a + b;
        },
        [&](complexd z) -> std::optional<double> {
            double d = gauge_radius(z);
            if (d <= 0 || !avg_ok(sc.N, z, d)) return std::nullopt;
            double v = disk_average(sc.N, z, d);
            return is_neg_inf(v) ? v : v + allowance;
        });
    {
        double maxd = s2.used == 0 ? neg_inf : s2.max_deficit;
        StageResult st{"averaged", !s2.infinite && maxd <= avg_tol, -maxd, s2.worst, ""};
        st.note = std::to_string(s2.used) + " nodes, stride " + std::to_string(stride);
        rep.stages.push_back(st);
    }

    // membership bound through the lift of N
    ScalarField Nr = restrict_domain(sc.N, sc.domain);
    Sweep s3 = sweep_deficit(
        sc.grid, sc.domain, stride,
        [&](complexd z) -> std::optional<double> {
            double d = gauge_radius(z);
            if (d <= 0 || !avg_ok(sc.witness, z, d)) return std::nullopt;
            double lf = log_modulus(sc.zeros, z);
            if (is_neg_inf(lf)) return neg_inf;
            double b = disk_average(sc.witness, z, d);
            if (is_neg_inf(b)) return neg_inf;
            return lf + b;
        },
        [&](complexd z) -> std::optional<double> {
            double d = gauge_radius(z);
            if (d <= 0 || !Nr.domain.contains_disk(z, d)) return std::nullopt;
            double lifted = sc.gauge.rule == GaugeRule::HalfDistance
                                ? lift_bounded_value(Nr, z) - std::log(1.0 / d)
                                : lift_plane_value(Nr, sc.gauge.P, z);
            return is_neg_inf(lifted) ? lifted : lifted + allowance;
        });
    {
        double maxd = s3.used == 0 ? neg_inf : s3.max_deficit;
        StageResult st{"membership", !s3.infinite && maxd <= avg_tol, -maxd, s3.worst, ""};
        st.note = std::to_string(s3.used) + " nodes, stride " + std::to_string(stride);
        rep.stages.push_back(st);
    }

    for (const auto& st : rep.stages) rep.passed = rep.passed && st.passed;
    return rep;
}

namespace {

CheckReport prop_bound_impl(const Scenario& sc, bool plane_gauge) {
    CheckReport rep;
    rep.check = plane_gauge ? "prop2" : "prop1";
    if (!sc.has_logh) throw std::invalid_argument(rep.check + " needs a logh candidate field");
    if (!sc.has_witness) throw std::invalid_argument(rep.check + " needs a witness field v");

    rep.stages.push_back(subharmonic_stage("candidate-subharmonic", sc.logh, sc));

    Gauge gauge = plane_gauge ? Gauge::plane_power(sc.gauge.P) : Gauge::half_distance();
    double tol = std::max(sc.tol, 1e-7);
    int stride = cap_stride(sc.grid.node_count(), sc.subgrid_cap);
    Sweep s = sweep_deficit(
        sc.grid, sc.domain, stride, field_eval(sc.logh),
        [&](complexd z) -> std::optional<double> {
            double d = gauge_value(gauge, sc.domain, z);
            if (d <= 0 || !sc.witness.domain.contains_disk(z, d)) return std::nullopt;
            double b = disk_average(sc.witness, z, d);
            if (is_neg_inf(b)) return b;
            return plane_gauge ? b : b + std::log(1.0 / d);
        });
    double maxd = s.used == 0 ? neg_inf : s.max_deficit;
    StageResult st{"pointwise-bound", !s.infinite && maxd <= tol, -maxd, s.worst, ""};
    st.note = std::to_string(s.used) + " nodes, stride " + std::to_string(stride);
    rep.stages.push_back(st);

    for (const auto& stg : rep.stages) rep.passed = rep.passed && stg.passed;
    return rep;
}

}  // namespace

CheckReport check_prop1_bound(const Scenario& sc) { return prop_bound_impl(sc, false); }

CheckReport check_prop2_bound(const Scenario& sc) { return prop_bound_impl(sc, true); }

CheckReport check_theorem2_measure(const Scenario& sc) {
    CheckReport rep;
    rep.check = "theorem2";
    if (!sc.has_profiles) throw std::invalid_argument("theorem2 check needs profiles h1 and h2");

    ComplementReport comp = complementable(sc.h1, sc.h2, sc.rho);
    {
        StageResult st{"complementable", comp.holds, comp.min_density,
                       complexd(comp.worst_angle, 0), ""};
        st.note = "min density " + fmt(comp.min_density) + ", min atom mass " +
                  fmt(comp.min_atom_mass);
        rep.stages.push_back(st);
    }
    if (!comp.holds) {
        rep.passed = false;
        return rep;
    }

    PeriodicProfile diff = sc.h2 - sc.h1;
    PolarRieszDensity polar{sc.rho, defect_measure(diff, sc.rho)};

    ScalarField gridfield = extend(sc.h2, sc.rho) - extend(sc.h1, sc.rho);
    DiscreteMeasure mu = discrete_riesz(gridfield, sc.grid, {});

    const int S = sc.sectors;
    const double width = 2.0 * pi / S;
    double worst_margin = pos_inf;
    int worst_sector = -1;
    double worst_grid = 0, worst_polar = 0;
    for (int k = 0; k < S; ++k) {
        double a0 = -width / 2 + k * width;  // atoms at 0 and pi sit mid-sector
        double pm = polar.sector_mass(0, sc.rmax, a0, a0 + width);
        double gm = mu.mass_in_half_open(Region{SectorRegion{0, sc.rmax, a0, a0 + width}});
        bool atom_sector = false;
        for (const auto& a : polar.angular.atoms)
            if (wrap_angle(a.angle - wrap_angle(a0)) < width) atom_sector = true;
        double allowed = std::max((atom_sector ? 0.05 : 0.03) * std::fabs(pm), 1e-6);
        double margin = allowed - std::fabs(gm - pm);
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_sector = k;
            worst_grid = gm;
            worst_polar = pm;
        }
    }
    {
        double mid = worst_sector * width;
        StageResult st{"sector-match", worst_margin >= 0, worst_margin,
                       complexd(wrap_angle(mid), 0), ""};
        st.note = "worst sector mid-angle " + fmt(wrap_angle(mid)) + ": grid " + fmt(worst_grid) +
                  " vs density " + fmt(worst_polar);
        rep.stages.push_back(st);
    }

    for (const auto& st : rep.stages) rep.passed = rep.passed && st.passed;
    return rep;
}

CheckReport run_check(const Scenario& sc) {
    if (sc.check == "forward") return check_forward(sc);
    if (sc.check == "converse") return check_converse_inequality(sc);
    if (sc.check == "prop1") return check_prop1_bound(sc);
    if (sc.check == "prop2") return check_prop2_bound(sc);
    if (sc.check == "theorem2") return check_theorem2_measure(sc);
    throw std::invalid_argument("unknown check '" + sc.check +
                                "' (want forward|converse|prop1|prop2|theorem2)");
}

void print_report(std::ostream& out, const CheckReport& rep) {
    out << "check " << rep.check << ": " << (rep.passed ? "PASS" : "FAIL") << "\n";
    if (rep.computed_const != neg_inf)
        out << "  computed const " << fmt(rep.computed_const) << "\n";
    for (const auto& st : rep.stages) {
        out << "  stage " << st.name << ": " << (st.passed ? "PASS" : "FAIL") << " margin "
            << fmt(st.margin) << " worst " << fmt(st.worst);
        if (!st.note.empty()) out << " -- " << st.note;
        out << "\n";
    }
}

namespace {

ScalarField field_from_text(const io::ScenarioFile& file, const std::string& text) {
    if (is_catalog_field(text)) return catalog_field(text);
    std::string local = file.resolve_path(text);
    if (std::filesystem::exists(local)) return resolve_field(local);
    return resolve_field(text);
}

PeriodicProfile profile_from_text(const io::ScenarioFile& file, const std::string& text) {
    if (is_catalog_profile(text)) return catalog_profile(text);
    std::string local = file.resolve_path(text);
    if (std::filesystem::exists(local)) return io::read_profile_csv(local);
    return resolve_profile(text);
}

}  // namespace

Scenario scenario_from_file(const io::ScenarioFile& file) {
    static const std::set<std::string> known = {
        "check", "domain", "zeros",   "N",          "M",         "witness",   "logh",
        "const", "grid",   "gauge",   "P",          "rho",       "h1",        "h2",
        "sectors", "rmax", "tol",     "measure_tol", "partition", "subgrid_cap"};
    for (const auto& [key, value] : file.kv)
        if (!known.count(key)) throw std::runtime_error("unknown scenario key '" + key + "'");

    Scenario sc;
    sc.check = file.check;

    std::string dom = file.get("domain", "disk");
    if (dom == "disk") {
        sc.domain = Domain::unit_disk();
    } else if (dom == "plane") {
        sc.domain = Domain::whole_plane();
    } else if (dom.rfind("rect", 0) == 0) {
        double x0, x1, y0, y1;
        if (std::sscanf(dom.c_str(), "rect %lf %lf %lf %lf", &x0, &x1, &y0, &y1) != 4)
            throw std::runtime_error("bad domain '" + dom + "' (want rect x0 x1 y0 y1)");
        sc.domain = Domain::rectangle(x0, x1, y0, y1);
    } else {
        throw std::runtime_error("bad domain '" + dom + "'");
    }

    std::string zeros = file.get("zeros", "none");
    if (zeros == "none") {
        sc.zeros = ZeroSequence();
    } else if (zeros.rfind("inline:", 0) == 0) {
        sc.zeros = io::parse_zeros_inline(zeros.substr(7));
    } else {
        sc.zeros = io::read_zeros_csv(file.resolve_path(zeros));
    }

    if (file.has("N")) {
        sc.N = field_from_text(file, file.get("N"));
        sc.has_N = true;
    }
    if (file.has("M")) {
        sc.M = field_from_text(file, file.get("M"));
        sc.has_M = true;
    }
    if (file.has("witness")) {
        sc.witness = field_from_text(file, file.get("witness"));
        sc.has_witness = true;
    }
    if (file.has("logh")) {
        sc.logh = field_from_text(file, file.get("logh"));
        sc.has_logh = true;
    }
    sc.allowed_const = file.num("const", 0.0);
    if (file.has("grid")) sc.grid = GridSpec::parse(file.get("grid"));
    if (file.has("partition")) sc.partition = GridSpec::parse(file.get("partition"));

    std::string gauge = file.get("gauge", "half-distance");
    double P = file.num("P", 1.0);
    if (gauge == "half-distance")
        sc.gauge = Gauge::half_distance();
    else if (gauge == "plane")
        sc.gauge = Gauge::plane_power(P);
    else
        throw std::runtime_error("bad gauge '" + gauge + "' (want half-distance|plane)");
    if (gauge == "half-distance") sc.gauge.P = P;  // prop2 reads P regardless of gauge

    sc.rho = file.num("rho", 1.0);
    if (file.has("h1") && file.has("h2")) {
        sc.h1 = profile_from_text(file, file.get("h1"));
        sc.h2 = profile_from_text(file, file.get("h2"));
        sc.has_profiles = true;
    } else if (file.has("h1") || file.has("h2")) {
        throw std::runtime_error("profiles h1 and h2 must be given together");
    }
    sc.sectors = static_cast<int>(file.num("sectors", 20));
    if (sc.sectors < 1) throw std::runtime_error("sectors must be >= 1");
    sc.rmax = file.num("rmax", 1.0);
    sc.tol = file.num("tol", 1e-9);
    sc.measure_tol = file.num("measure_tol", 1e-3);
    sc.subgrid_cap = static_cast<long>(file.num("subgrid_cap", 2000));

    if (sc.check == "theorem2" && !file.has("grid"))
        sc.grid = GridSpec::centered(1.0 / 256, 282);  // covers the unit disk with margin

    bool needs_N = sc.check == "forward" || sc.check == "converse";
    if (needs_N && !sc.has_N) throw std::runtime_error(sc.check + " scenario needs a field N");
    return sc;
}

}  // namespace subh
