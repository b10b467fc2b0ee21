#include "subh/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace subh::io {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& tok, const std::string& context) {
    std::string t = trim(tok);
    if (t == "-inf") return neg_inf;
    if (t == "inf" || t == "+inf") return pos_inf;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw std::runtime_error("bad number '" + t + "' in " + context);
    return v;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

bool skippable(const std::string& line) {
    std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

}  // namespace

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

ZeroSequence read_zeros_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    bool header_seen = false;
    std::vector<Zero> zeros;
    while (std::getline(in, line)) {
        if (skippable(line)) continue;
        auto cols = split(trim(line), ',');
        if (!header_seen) {
            if (cols.size() < 3 || trim(cols[0]) != "re" || trim(cols[1]) != "im" ||
                trim(cols[2]) != "multiplicity")
                throw std::runtime_error("zeros file " + path +
                                         " must start with header re,im,multiplicity");
            header_seen = true;
            continue;
        }
        if (cols.size() != 3) throw std::runtime_error("bad zeros row in " + path + ": " + line);
        double re = parse_number(cols[0], path);
        double im = parse_number(cols[1], path);
        double m = parse_number(cols[2], path);
        long mi = std::lround(m);
        if (mi < 1 || std::fabs(m - mi) > 1e-9)
            throw std::runtime_error("multiplicity must be a positive integer in " + path);
        zeros.push_back({complexd(re, im), static_cast<int>(mi)});
    }
    if (!header_seen)
        throw std::runtime_error("zeros file " + path + " is empty (header required)");
    return ZeroSequence(zeros);
}

ZeroSequence parse_zeros_inline(const std::string& text) {
    std::vector<Zero> zeros;
    for (const std::string& part : split(text, ';')) {
        std::string p = trim(part);
        if (p.empty()) continue;
        auto cols = split(p, ',');
        if (cols.size() != 2 && cols.size() != 3)
            throw std::runtime_error("bad inline zero '" + p + "' (want re,im[,mult])");
        double re = parse_number(cols[0], "inline zeros");
        double im = parse_number(cols[1], "inline zeros");
        int m = 1;
        if (cols.size() == 3) {
            double mv = parse_number(cols[2], "inline zeros");
            m = static_cast<int>(std::lround(mv));
            if (m < 1 || std::fabs(mv - m) > 1e-9)
                throw std::runtime_error("multiplicity must be a positive integer: " + p);
        }
        zeros.push_back({complexd(re, im), m});
    }
    return ZeroSequence(zeros);
}

void write_zeros_csv(std::ostream& out, const ZeroSequence& zeros) {
    out << "re,im,multiplicity\n";
    for (const auto& z : zeros.entries)
        out << fmt(z.point.real()) << "," << fmt(z.point.imag()) << "," << z.multiplicity << "\n";
}

GridData read_grid_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    bool have_spec = false;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    int nx = 0, ny = 0;
    std::vector<double> values;
    bool header_seen = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::istringstream ss(t.substr(1));
            std::string tag;
            ss >> tag;
            if (tag == "grid") {
                if (!(ss >> x0 >> x1 >> y0 >> y1 >> nx >> ny))
                    throw std::runtime_error("malformed '# grid' line in " + path);
                have_spec = true;
            }
            continue;
        }
        auto cols = split(t, ',');
        if (!header_seen) {
            if (cols.size() != 3 || trim(cols[0]) != "re" || trim(cols[1]) != "im" ||
                trim(cols[2]) != "value")
                throw std::runtime_error("grid file " + path + " must have header re,im,value");
            header_seen = true;
            continue;
        }
        if (cols.size() != 3) throw std::runtime_error("bad grid row in " + path + ": " + t);
        values.push_back(parse_number(cols[2], path));
    }
    if (!have_spec) throw std::runtime_error("grid file " + path + " lacks '# grid' sidecar line");
    GridSpec spec{x0, x1, y0, y1, nx, ny};
    if (static_cast<long>(values.size()) != spec.node_count())
        throw std::runtime_error("grid file " + path + " has " + std::to_string(values.size()) +
                                 " rows, expected " + std::to_string(spec.node_count()));
    GridData grid(spec);
    long r = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) grid.values(i, j) = values[r++];
    return grid;
}

void write_grid_csv(std::ostream& out, const GridData& grid) {
    const GridSpec& s = grid.spec;
    out << "# grid " << fmt(s.x0) << " " << fmt(s.x1) << " " << fmt(s.y0) << " " << fmt(s.y1)
        << " " << s.nx << " " << s.ny << "\n";
    out << "re,im,value\n";
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i)
            out << fmt(s.x(i)) << "," << fmt(s.y(j)) << "," << fmt(grid.values(i, j)) << "\n";
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu) {
    for (const auto& cell : mu.cells) {
        if (const auto* r = std::get_if<RectRegion>(&cell.region)) {
            out << "cell," << fmt(r->x0) << "," << fmt(r->x1) << "," << fmt(r->y0) << ","
                << fmt(r->y1) << "," << fmt(cell.mass) << "\n";
        } else if (const auto* d = std::get_if<DiskRegion>(&cell.region)) {
            out << "cell-disk," << fmt(d->center.real()) << "," << fmt(d->center.imag()) << ","
                << fmt(d->radius) << "," << fmt(cell.mass) << "\n";
        } else if (const auto* s = std::get_if<SectorRegion>(&cell.region)) {
            out << "cell-sector," << fmt(s->r0) << "," << fmt(s->r1) << "," << fmt(s->a0) << ","
                << fmt(s->a1) << "," << fmt(cell.mass) << "\n";
        }
    }
    for (const auto& a : mu.atoms)
        out << "atom," << fmt(a.point.real()) << "," << fmt(a.point.imag()) << "," << fmt(a.mass)
            << "\n";
}

PeriodicProfile read_profile_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    bool header_seen = false;
    std::vector<double> thetas, values;
    while (std::getline(in, line)) {
        if (skippable(line)) continue;
        auto cols = split(trim(line), ',');
        if (!header_seen) {
            if (cols.size() != 2 || trim(cols[0]) != "theta" || trim(cols[1]) != "value")
                throw std::runtime_error("profile file " + path + " must have header theta,value");
            header_seen = true;
            continue;
        }
        if (cols.size() != 2) throw std::runtime_error("bad profile row in " + path + ": " + line);
        thetas.push_back(parse_number(cols[0], path));
        values.push_back(parse_number(cols[1], path));
    }
    int n = static_cast<int>(values.size());
    if (n < 4) throw std::runtime_error("profile file " + path + " needs at least 4 samples");
    double step = 2.0 * pi / n;
    for (int k = 0; k < n; ++k)
        if (std::fabs(thetas[k] - k * step) > 1e-9 * (1 + 2.0 * pi))
            throw std::runtime_error("profile file " + path +
                                     " must sample uniform angles starting at 0");
    return PeriodicProfile::from_samples(values, path);
}

void write_profile_csv(std::ostream& out, const PeriodicProfile& h) {
    out << "theta,value\n";
    const int n = h.size();
    for (int k = 0; k < n; ++k)
        out << fmt(h.angle(k)) << "," << fmt(h.sample(k)) << "\n";
}

std::string ScenarioFile::get(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

double ScenarioFile::num(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    return parse_number(it->second, "scenario key '" + key + "'");
}

std::string ScenarioFile::resolve_path(const std::string& value) const {
    std::filesystem::path p(value);
    if (p.is_absolute()) return p.string();
    return (dir / p).string();
}

ScenarioFile read_scenario(const std::string& path) {
    auto in = open_or_throw(path);
    ScenarioFile sc;
    sc.dir = std::filesystem::path(path).parent_path();
    if (sc.dir.empty()) sc.dir = ".";
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t sp = t.find_first_of(" \t");
        std::string key = sp == std::string::npos ? t : t.substr(0, sp);
        std::string value = sp == std::string::npos ? "" : trim(t.substr(sp));
        if (sc.kv.count(key))
            throw std::runtime_error("duplicate scenario key '" + key + "' in " + path);
        sc.kv[key] = value;
    }
    sc.check = sc.get("check");
    if (sc.check.empty()) throw std::runtime_error("scenario " + path + " lacks a 'check' line");
    return sc;
}

}  // namespace subh::io
