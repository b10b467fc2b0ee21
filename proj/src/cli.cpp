#include "subh/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "subh/averaging.hpp"
#include "subh/catalog.hpp"
#include "subh/expr.hpp"
#include "subh/io.hpp"
#include "subh/lifting.hpp"
#include "subh/trigconvex.hpp"
#include "subh/verify.hpp"
#include "subh/zeros.hpp"

namespace subh {

namespace {

complexd parse_center(const std::string& text) {
    auto parts = io::split(text, ',');
    if (parts.size() != 2) throw std::invalid_argument("--center wants re,im");
    char* e1 = nullptr;
    char* e2 = nullptr;
    double re = std::strtod(parts[0].c_str(), &e1);
    double im = std::strtod(parts[1].c_str(), &e2);
    if (*e1 != '\0' || *e2 != '\0') throw std::invalid_argument("--center wants re,im numbers");
    return {re, im};
}

Domain parse_domain(const std::string& text) {
    if (text == "disk") return Domain::unit_disk();
    if (text == "plane") return Domain::whole_plane();
    if (text.rfind("rect:", 0) == 0) {
        auto parts = io::split(text.substr(5), ',');
        if (parts.size() != 4) throw std::invalid_argument("--domain rect:x0,x1,y0,y1");
        return Domain::rectangle(std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]),
                                 std::stod(parts[3]));
    }
    throw std::invalid_argument("unknown domain '" + text + "' (disk|plane|rect:x0,x1,y0,y1)");
}

ScalarField field_on_domain(const std::string& text, const Domain& dom) {
    ScalarField f = resolve_field(text);
    if (f.domain.kind == DomainKind::Plane && dom.kind != DomainKind::Plane) f.domain = dom;
    return f;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    body(out);
}

const char* kCsvFooter =
    "CSV columns:\n"
    "  grids    '# grid x0 x1 y0 y1 nx ny' sidecar, then re,im,value rows\n"
    "           (x fastest, y outer; -inf spelled literally)\n"
    "  zeros    re,im,multiplicity\n"
    "  measures cell,x0,x1,y0,y1,mass | cell-disk,cx,cy,r,mass |\n"
    "           cell-sector,r0,r1,a0,a1,mass | atom,x,y,mass\n"
    "  profiles theta,value (uniform angles from 0)\n"
    "  defects  theta,density rows then '# atom theta mass' comment lines\n"
    "  verify   stage,passed,margin,worst_re,worst_im\n";

struct CatalogEntry {
    std::string name;
    std::string text;
};

std::vector<CatalogEntry> field_descriptions() {
    return {
        {"re", "Re z, harmonic"},
        {"im", "Im z, harmonic"},
        {"rez2", "Re z^2 = x^2 - y^2, harmonic"},
        {"xy", "x*y, harmonic"},
        {"abs2", "|z|^2, subharmonic"},
        {"potential:<re,im,m;...>", "log-modulus of the listed zeros"},
        {"ext:<profile>:<rho>", "h(theta)*r^rho homogeneous extension"},
    };
}

std::vector<CatalogEntry> profile_descriptions() {
    return {
        {"const:<v>", "constant profile"},
        {"cos", "cos(theta)"},
        {"sin", "sin(theta)"},
        {"abssin", "|sin(theta)|, kinks at 0 and pi"},
        {"abscos", "|cos(theta)|, kinks at pi/2 and 3*pi/2"},
        {"2+0.5cos", "2 + 0.5*cos(theta)"},
        {"1.5+sin", "1.5 + sin(theta)"},
        {"cos+abssin", "cos(theta) + |sin(theta)|, kinks at 0 and pi"},
        {"2+0.5cos2t", "2 + 0.5*cos(2*theta)"},
    };
}

int cmd_catalog(const std::string& action, const std::string& name, std::ostream& out) {
    if (action == "list") {
        out << "fields:\n";
        for (const auto& e : field_descriptions()) out << "  " << e.name << " -- " << e.text << "\n";
        out << "profiles:\n";
        for (const auto& e : profile_descriptions())
            out << "  " << e.name << " -- " << e.text << "\n";
        return 0;
    }
    if (action != "show") throw std::invalid_argument("catalog wants 'list' or 'show <name>'");
    if (name.empty()) throw std::invalid_argument("catalog show wants a name");
    for (const auto& e : field_descriptions())
        if (e.name == name) {
            out << name << " -- " << e.text << "\n";
            return 0;
        }
    for (const auto& e : profile_descriptions())
        if (e.name == name) {
            out << name << " -- " << e.text << "\n";
            return 0;
        }
    double v = 0;
    if (name.rfind("const:", 0) == 0) {
        PeriodicProfile p = catalog_profile(name);  // validates the number
        v = p.sample(0);
        out << name << " -- profile == " << fmt(v) << "\n";
        return 0;
    }
    if (name.rfind("potential:", 0) == 0) {
        ScalarField f = catalog_field(name);
        out << name << " -- log-modulus potential, " << f.atoms.size() << " distinct zeros\n";
        return 0;
    }
    if (name.rfind("ext:", 0) == 0) {
        ScalarField f = catalog_field(name);
        out << name << " -- " << f.label << ", homogeneous extension\n";
        return 0;
    }
    throw std::invalid_argument("unknown catalog entry: " + name);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical toolkit for weighted spaces of holomorphic functions: disk\n"
                 "averages, weight lifts, discrete Riesz measures, zero-set counting,\n"
                 "trigonometric convexity, and scenario verification."};
    app.footer(kCsvFooter);
    app.require_subcommand(1);

    // ---- avg
    auto* avg = app.add_subcommand("avg", "Disk average B(z,r;field)");
    std::string avg_field, avg_center = "0,0";
    double avg_radius = 0, avg_tol = 1e-8;
    int avg_panels = 8, avg_angles = 32;
    avg->add_option("--field", avg_field, "catalog name, CSV path, or expression")->required();
    avg->add_option("--center", avg_center, "center as re,im (default 0,0)");
    avg->add_option("--radius", avg_radius, "disk radius")->required();
    avg->add_option("--panels", avg_panels, "radial panels (>= 4)");
    avg->add_option("--angles", avg_angles, "angular nodes (>= 8)");
    avg->add_option("--tol", avg_tol, "relative quadrature tolerance");

    // ---- lift
    auto* lift = app.add_subcommand("lift", "Materialize the averaged weight lift on a grid");
    std::string lift_field, lift_domain = "disk", lift_grid, lift_out;
    double lift_P = 1.0, lift_tol = 1e-8;
    lift->add_option("--field", lift_field, "weight N")->required();
    lift->add_option("--domain", lift_domain, "disk|plane|rect:x0,x1,y0,y1");
    lift->add_option("--P", lift_P, "plane gauge exponent (domain plane)");
    lift->add_option("--grid", lift_grid, "x0,x1,y0,y1,nx,ny (must sit inside the domain)")
        ->required();
    lift->add_option("--out", lift_out, "write the lifted grid CSV here");
    lift->add_option("--tol", lift_tol, "relative quadrature tolerance");

    // ---- riesz
    auto* riesz = app.add_subcommand("riesz", "Discrete Riesz measure of a field on a grid");
    std::string riesz_field, riesz_grid, riesz_out;
    double riesz_atomr = 0.0;
    riesz->add_option("--field", riesz_field, "field")->required();
    riesz->add_option("--grid", riesz_grid, "x0,x1,y0,y1,nx,ny")->required();
    riesz->add_option("--out", riesz_out, "write the measure CSV here");
    riesz->add_option("--atom-radius", riesz_atomr,
                      "atom-corrected stencils within this radius (default off)");

    // ---- checksubh
    auto* chk = app.add_subcommand("checksubh", "Sub-mean-value certification on a grid");
    std::string chk_field, chk_grid;
    double chk_tol = 1e-9;
    int chk_stride = 1;
    chk->add_option("--field", chk_field, "field")->required();
    chk->add_option("--grid", chk_grid, "x0,x1,y0,y1,nx,ny")->required();
    chk->add_option("--tol", chk_tol, "allowed negative slack");
    chk->add_option("--stride", chk_stride, "node stride (>= 1)");

    // ---- tc-check
    auto* tcc = app.add_subcommand("tc-check", "Three-point sine inequality sweep");
    std::string tcc_profile;
    double tcc_rho = 1.0;
    tcc->add_option("--profile", tcc_profile, "catalog name, CSV path, or expression in theta")
        ->required();
    tcc->add_option("--rho", tcc_rho, "homogeneity order rho > 0");

    // ---- tc-defect
    auto* tcd = app.add_subcommand("tc-defect", "Angular defect density and atoms");
    std::string tcd_profile, tcd_out;
    double tcd_rho = 1.0;
    tcd->add_option("--profile", tcd_profile, "profile")->required();
    tcd->add_option("--rho", tcd_rho, "homogeneity order rho > 0");
    tcd->add_option("--out", tcd_out, "write theta,density CSV here");

    // ---- tc-extend
    auto* tce = app.add_subcommand("tc-extend", "Sample h(theta)*r^rho on a grid");
    std::string tce_profile, tce_grid, tce_out;
    double tce_rho = 1.0;
    tce->add_option("--profile", tce_profile, "profile")->required();
    tce->add_option("--rho", tce_rho, "homogeneity order rho > 0");
    tce->add_option("--grid", tce_grid, "x0,x1,y0,y1,nx,ny")->required();
    tce->add_option("--out", tce_out, "write the sampled grid CSV here");

    // ---- tc-qbound
    auto* tcq = app.add_subcommand("tc-qbound", "Complementability threshold for q*g");
    // long-only help here: the default -h short flag would collide with --h
    tcq->set_help_flag("--help", "print this help message and exit");
    std::string tcq_g, tcq_h;
    double tcq_rho = 1.0, tcq_c = 0.0, tcq_C = 0.0;
    tcq->add_option("--g", tcq_g, "base profile g")->required();
    tcq->add_option("--h", tcq_h, "profile h to complement")->required();
    tcq->add_option("--rho", tcq_rho, "homogeneity order rho > 0");
    tcq->add_option("--c", tcq_c, "slope-drop constant c >= 0");
    tcq->add_option("--C", tcq_C, "curvature bound C");

    // ---- verify
    auto* ver = app.add_subcommand("verify", "Run a scenario file");
    std::string ver_scenario, ver_out;
    ver->add_option("--scenario", ver_scenario, "key-value scenario file")->required();
    ver->add_option("--out", ver_out, "write per-stage margins CSV here");

    // ---- catalog
    auto* cat = app.add_subcommand("catalog", "List or describe built-in entries");
    std::string cat_action = "list", cat_name;
    cat->add_option("action", cat_action, "list|show");
    cat->add_option("name", cat_name, "entry name for show");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("subh");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (app.got_subcommand(avg)) {
            ScalarField f = resolve_field(avg_field);
            complexd z = parse_center(avg_center);
            QuadratureSpec q{avg_panels, avg_angles, avg_tol};
            AverageResult r = disk_average_detailed(f, z, avg_radius, q);
            out << "command avg\n";
            out << "field " << f.label << "\n";
            out << "center " << fmt(z) << "\n";
            out << "radius " << fmt(avg_radius) << "\n";
            out << "value " << fmt(r.value) << "\n";
            out << "error " << fmt(r.error) << "\n";
            out << "evals " << r.evals << "\n";
            out << "converged " << (r.converged ? "true" : "false") << "\n";
        } else if (app.got_subcommand(lift)) {
            Domain dom = parse_domain(lift_domain);
            ScalarField f = field_on_domain(lift_field, dom);
            GridSpec grid = GridSpec::parse(lift_grid);
            QuadratureSpec q{8, 32, lift_tol};
            ScalarField lifted = dom.kind == DomainKind::Plane
                                     ? lift_plane(f, lift_P, grid, q)
                                     : lift_bounded(f, grid, q);
            const auto& values = lifted.grid->values;
            out << "command lift\n";
            out << "field " << f.label << "\n";
            out << "domain " << dom.describe() << "\n";
            out << "grid " << grid.describe() << "\n";
            out << "nodes " << grid.node_count() << "\n";
            out << "min " << fmt(values.minCoeff()) << "\n";
            out << "max " << fmt(values.maxCoeff()) << "\n";
            if (!lift_out.empty())
                write_file(lift_out, [&](std::ostream& o) { io::write_grid_csv(o, *lifted.grid); });
        } else if (app.got_subcommand(riesz)) {
            ScalarField f = resolve_field(riesz_field);
            GridSpec grid = GridSpec::parse(riesz_grid);
            RieszOptions opt;
            opt.atom_correction_radius = riesz_atomr;
            DiscreteMeasure m = discrete_riesz(f, grid, opt);
            out << "command riesz\n";
            out << "field " << f.label << "\n";
            out << "grid " << grid.describe() << "\n";
            out << "cells " << m.cells.size() << "\n";
            out << "atoms " << m.atoms.size() << "\n";
            out << "total " << fmt(m.total_mass()) << "\n";
            if (!riesz_out.empty())
                write_file(riesz_out, [&](std::ostream& o) { io::write_measure_csv(o, m); });
        } else if (app.got_subcommand(chk)) {
            ScalarField f = resolve_field(chk_field);
            GridSpec grid = GridSpec::parse(chk_grid);
            if (chk_stride < 1) throw std::invalid_argument("--stride must be >= 1");
            SubharmonicityReport r = subharmonicity_check(f, grid, {}, chk_tol, chk_stride);
            out << "command checksubh\n";
            out << "field " << f.label << "\n";
            out << "holds " << (r.holds ? "true" : "false") << "\n";
            out << "margin " << fmt(r.margin) << "\n";
            out << "worst " << fmt(r.worst_node) << " radius " << fmt(r.worst_radius) << "\n";
            out << "checks " << r.checks << "\n";
            code = r.holds ? 0 : 1;
        } else if (app.got_subcommand(tcc)) {
            PeriodicProfile h = resolve_profile(tcc_profile);
            TrigConvexReport r = is_rho_trig_convex(h, tcc_rho);
            out << "command tc-check\n";
            out << "profile " << h.name << "\n";
            out << "rho " << fmt(tcc_rho) << "\n";
            out << "holds " << (r.holds ? "true" : "false") << "\n";
            out << "margin " << fmt(r.margin) << "\n";
            out << "worst-arc " << fmt(r.worst_theta1) << " " << fmt(r.worst_theta) << " "
                << fmt(r.worst_theta2) << "\n";
            out << "triples " << r.triples << " stride " << r.stride << "\n";
            if (r.arc_too_coarse) out << "note arc narrower than two sample steps\n";
            code = r.holds ? 0 : 1;
        } else if (app.got_subcommand(tcd)) {
            PeriodicProfile h = resolve_profile(tcd_profile);
            DefectMeasure d = defect_measure(h, tcd_rho);
            out << "command tc-defect\n";
            out << "profile " << h.name << "\n";
            out << "rho " << fmt(tcd_rho) << "\n";
            out << "samples " << d.size() << "\n";
            out << "min-density " << fmt(d.min_density()) << "\n";
            out << "total " << fmt(d.total()) << "\n";
            out << "atoms " << d.atoms.size() << "\n";
            for (const auto& a : d.atoms)
                out << "atom " << fmt(a.angle) << " " << fmt(a.mass) << "\n";
            if (!tcd_out.empty())
                write_file(tcd_out, [&](std::ostream& o) {
                    o << "theta,density\n";
                    const int n = d.size();
                    for (int k = 0; k < n; ++k)
                        o << fmt(2.0 * pi * k / n) << "," << fmt(d.density[k]) << "\n";
                    for (const auto& a : d.atoms)
                        o << "# atom " << fmt(a.angle) << " " << fmt(a.mass) << "\n";
                });
        } else if (app.got_subcommand(tce)) {
            PeriodicProfile h = resolve_profile(tce_profile);
            ScalarField f = extend(h, tce_rho);
            GridSpec grid = GridSpec::parse(tce_grid);
            GridData data(grid);
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i) data.values(i, j) = f(grid.node(i, j));
            out << "command tc-extend\n";
            out << "field " << f.label << "\n";
            out << "grid " << grid.describe() << "\n";
            out << "min " << fmt(data.values.minCoeff()) << "\n";
            out << "max " << fmt(data.values.maxCoeff()) << "\n";
            if (!tce_out.empty())
                write_file(tce_out, [&](std::ostream& o) { io::write_grid_csv(o, data); });
        } else if (app.got_subcommand(tcq)) {
            PeriodicProfile g = resolve_profile(tcq_g);
            PeriodicProfile h = resolve_profile(tcq_h);
            double q = q_threshold(g, h, tcq_rho, tcq_c, tcq_C);
            BulletReport b = verify_bullet_conditions(g, h, tcq_rho, tcq_c, tcq_C);
            out << "command tc-qbound\n";
            out << "g " << g.name << "\n";
            out << "h " << h.name << "\n";
            out << "rho " << fmt(tcq_rho) << " c " << fmt(tcq_c) << " C " << fmt(tcq_C) << "\n";
            out << "q_threshold " << fmt(q) << "\n";
            out << "bullet1 " << (b.bullet1 ? "true" : "false") << "\n";
            out << "bullet2 " << (b.bullet2 ? "true" : "false") << "\n";
            out << "bullet3 " << (b.bullet3 ? "true" : "false") << "\n";
            out << "sup_h_second " << fmt(b.sup_h_second) << "\n";
            out << "min_g_pair_sum " << fmt(b.min_g_pair_sum) << "\n";
        } else if (app.got_subcommand(ver)) {
            io::ScenarioFile sf = io::read_scenario(ver_scenario);
            Scenario sc = scenario_from_file(sf);
            CheckReport rep = run_check(sc);
            out << "command verify\n";
            out << "scenario " << ver_scenario << "\n";
            print_report(out, rep);
            if (!ver_out.empty())
                write_file(ver_out, [&](std::ostream& o) {
                    o << "stage,passed,margin,worst_re,worst_im\n";
                    for (const auto& st : rep.stages)
                        o << st.name << "," << (st.passed ? 1 : 0) << "," << fmt(st.margin) << ","
                          << fmt(st.worst.real()) << "," << fmt(st.worst.imag()) << "\n";
                });
            code = rep.passed ? 0 : 1;
        } else if (app.got_subcommand(cat)) {
            code = cmd_catalog(cat_action, cat_name, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    auto t1 = std::chrono::steady_clock::now();
    err << "wall_ms " << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
        << "\n";
    return code;
}

}  // namespace subh
