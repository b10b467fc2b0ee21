#include "subh/measure.hpp"

namespace subh {

double DiscreteMeasure::total_mass() const {
    double t = 0;
    for (const auto& c : cells) t += c.mass;
    for (const auto& a : atoms) t += a.mass;
    return t;
}

complexd region_center(const Region& region) {
    if (const auto* r = std::get_if<RectRegion>(&region))
        return {0.5 * (r->x0 + r->x1), 0.5 * (r->y0 + r->y1)};
    if (const auto* d = std::get_if<DiskRegion>(&region)) return d->center;
    const auto& s = std::get<SectorRegion>(region);
    double span = wrap_angle(s.a1 - s.a0);
    if (span == 0.0) span = 2.0 * pi;
    double mid = s.a0 + 0.5 * span;
    double rad = 0.5 * (s.r0 + s.r1);
    return {rad * std::cos(mid), rad * std::sin(mid)};
}

double DiscreteMeasure::mass_in(const Region& region) const {
    double t = 0;
    for (const auto& c : cells)
        if (region_contains(region, region_center(c.region))) t += c.mass;
    for (const auto& a : atoms)
        if (region_contains(region, a.point)) t += a.mass;
    return t;
}

double DiscreteMeasure::mass_in_half_open(const Region& region) const {
    double t = 0;
    for (const auto& c : cells)
        if (region_contains_half_open(region, region_center(c.region))) t += c.mass;
    for (const auto& a : atoms)
        if (region_contains_half_open(region, a.point)) t += a.mass;
    return t;
}

bool DiscreteMeasure::has_atom_in_half_open(const Region& region) const {
    for (const auto& a : atoms)
        if (region_contains_half_open(region, a.point)) return true;
    return false;
}

void DiscreteMeasure::validate(double tol) const {
    for (const auto& c : cells)
        if (c.mass < -tol) throw std::invalid_argument("negative cell mass " + fmt(c.mass));
    for (const auto& a : atoms)
        if (a.mass < -tol) throw std::invalid_argument("negative atom mass " + fmt(a.mass));
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    DiscreteMeasure out = a;
    out.cells.insert(out.cells.end(), b.cells.begin(), b.cells.end());
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    return out;
}

int counting_measure(const ZeroSequence& zs, const Region& region) {
    int t = 0;
    for (const auto& e : zs.entries)
        if (region_contains(region, e.point)) t += e.multiplicity;
    return t;
}

DiscreteMeasure counting_measure_atoms(const ZeroSequence& zs) {
    DiscreteMeasure m;
    for (const auto& e : zs.entries)
        m.atoms.push_back({e.point, static_cast<double>(e.multiplicity)});
    return m;
}

MeasureCompareReport measure_geq(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                 const GridSpec& partition, double tol) {
    if (!(tol >= 0)) throw std::invalid_argument("measure_geq tolerance must be >= 0");
    MeasureCompareReport rep;
    rep.holds = true;
    rep.margin = pos_inf;
    bool first = true;
    for (int j = 0; j + 1 < partition.ny; ++j) {
        for (int i = 0; i + 1 < partition.nx; ++i) {
            RectRegion cell{partition.x(i), partition.x(i + 1), partition.y(j),
                            partition.y(j + 1)};
            Region reg = cell;
            double a = nu.mass_in_half_open(reg);
            double b = mu.mass_in_half_open(reg);
            double m = a - b;
            ++rep.cells;
            if (first || m < rep.margin) {
                rep.margin = m;
                rep.worst_cell = cell;
                first = false;
            }
            if (nu.has_atom_in_half_open(reg) && mu.has_atom_in_half_open(reg))
                rep.coarse_warning = true;
        }
    }
    if (first) {
        rep.margin = 0;
        rep.holds = true;
        return rep;
    }
    rep.holds = rep.margin >= -tol;
    return rep;
}

}  // namespace subh
