#include "subh/field.hpp"

#include <algorithm>

namespace subh {

namespace {

// Strict weak order on points so merged atom/zero lists are deterministic.
bool point_less(complexd a, complexd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

double polar_value(const PolarPart& p, complexd z) {
    double r = std::abs(z);
    if (r == 0.0) return 0.0;
    return p.coef * p.profile(std::atan2(z.imag(), z.real())) * std::pow(r, p.rho);
}

}  // namespace

double ScalarField::operator()(complexd z) const {
    if (!domain.contains(z)) throw std::domain_error("point outside domain: " + fmt(z));
    bool hit_minus_inf = false;
    double acc = constant;
    for (const auto& a : atoms) {
        double d = std::abs(z - a.point);
        if (d == 0.0) {
            if (a.weight < 0)
                throw std::runtime_error("field is +inf at " + fmt(z) +
                                         " (negative-weight log singularity)");
            hit_minus_inf = true;
        } else {
            acc += a.weight * std::log(d);
        }
    }
    if (smooth) {
        double v = smooth(z);
        if (std::isnan(v) || v == pos_inf)
            throw std::runtime_error("field evaluation not finite at " + fmt(z));
        if (is_neg_inf(v))
            hit_minus_inf = true;
        else
            acc += v;
    }
    if (grid) {
        double v = grid->bilinear(z);
        if (is_neg_inf(v))
            hit_minus_inf = true;
        else
            acc += v;
    }
    for (const auto& p : polars) acc += polar_value(p, z);
    if (hit_minus_inf) return neg_inf;
    if (std::isnan(acc) || acc == pos_inf)
        throw std::runtime_error("field evaluation not finite at " + fmt(z));
    return acc;
}

double ScalarField::value_excluding_atoms_at(complexd z, double* atom_weight_here) const {
    std::vector<int> here;
    double w = 0;
    for (int k = 0; k < static_cast<int>(atoms.size()); ++k) {
        if (std::abs(z - atoms[k].point) == 0.0) {
            here.push_back(k);
            w += atoms[k].weight;
        }
    }
    if (atom_weight_here) *atom_weight_here = w;
    return value_excluding_atoms(z, here);
}

double ScalarField::value_excluding_atoms(complexd z, const std::vector<int>& exclude) const {
    ScalarField rest = *this;
    rest.atoms.clear();
    for (int k = 0; k < static_cast<int>(atoms.size()); ++k) {
        if (std::find(exclude.begin(), exclude.end(), k) == exclude.end())
            rest.atoms.push_back(atoms[k]);
    }
    return rest(z);
}

ScalarField constant_field(double value, Domain domain) {
    ScalarField f;
    f.domain = domain;
    f.constant = value;
    f.label = fmt(value);
    return f;
}

ScalarField smooth_field(std::function<double(complexd)> fn, std::string label, Domain domain) {
    ScalarField f;
    f.domain = domain;
    f.smooth = std::move(fn);
    f.label = std::move(label);
    return f;
}

ScalarField grid_field(std::shared_ptr<const GridData> data, Domain domain) {
    ScalarField f;
    f.domain = domain;
    f.grid = std::move(data);
    f.label = "grid-field";
    return f;
}

namespace {

// Merge atom lists, cancelling identical points exactly.
std::vector<LogAtom> merge_atoms(std::vector<LogAtom> a, const std::vector<LogAtom>& b,
                                 double sign) {
    for (const auto& atom : b) a.push_back({atom.point, sign * atom.weight});
    std::sort(a.begin(), a.end(),
              [](const LogAtom& u, const LogAtom& v) { return point_less(u.point, v.point); });
    std::vector<LogAtom> out;
    for (const auto& atom : a) {
        if (!out.empty() && out.back().point == atom.point)
            out.back().weight += atom.weight;
        else
            out.push_back(atom);
    }
    std::erase_if(out, [](const LogAtom& x) { return x.weight == 0.0; });
    return out;
}

std::function<double(complexd)> combine_smooth(const ScalarField& a, const ScalarField& b,
                                               double sign) {
    // Grids fold into the smooth closure of the combination; the combined field
    // keeps grid == nullptr so averaging treats everything uniformly.
    auto part = [](const ScalarField& f) -> std::function<double(complexd)> {
        if (f.smooth && f.grid) {
            auto s = f.smooth;
            auto g = f.grid;
            return [s, g](complexd z) { return s(z) + g->bilinear(z); };
        }
        if (f.smooth) return f.smooth;
        if (f.grid) {
            auto g = f.grid;
            return [g](complexd z) { return g->bilinear(z); };
        }
        return {};
    };
    auto pa = part(a), pb = part(b);
    if (pa && pb)
        return [pa, pb, sign](complexd z) { return pa(z) + sign * pb(z); };
    if (pa) return pa;
    if (pb) {
        if (sign == 1.0) return pb;
        return [pb](complexd z) { return -pb(z); };
    }
    return {};
}

Domain combined_domain(const ScalarField& a, const ScalarField& b) {
    // The smaller domain wins; mismatched bounded domains are the caller's
    // responsibility and surface as domain errors on evaluation.
    if (a.domain.kind == DomainKind::Plane) return b.domain;
    return a.domain;
}

ScalarField combine(const ScalarField& a, const ScalarField& b, double sign, char op) {
    ScalarField f;
    f.domain = combined_domain(a, b);
    f.constant = a.constant + sign * b.constant;
    f.atoms = merge_atoms(a.atoms, b.atoms, sign);
    f.smooth = combine_smooth(a, b, sign);
    f.polars = a.polars;
    for (auto p : b.polars) {
        p.coef *= sign;
        f.polars.push_back(std::move(p));
    }
    f.label = "(" + a.label + ") " + op + " (" + b.label + ")";
    return f;
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return combine(a, b, 1.0, '+');
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return combine(a, b, -1.0, '-');
}

ScalarField operator*(double a, const ScalarField& f) {
    ScalarField g;
    g.domain = f.domain;
    g.constant = a * f.constant;
    g.atoms = f.atoms;
    for (auto& atom : g.atoms) atom.weight *= a;
    std::erase_if(g.atoms, [](const LogAtom& x) { return x.weight == 0.0; });
    if (f.smooth || f.grid) {
        auto s = f.smooth;
        auto gr = f.grid;
        g.smooth = [a, s, gr](complexd z) {
            double v = 0;
            if (s) v += s(z);
            if (gr) v += gr->bilinear(z);
            return a * v;
        };
    }
    g.polars = f.polars;
    for (auto& p : g.polars) p.coef *= a;
    g.label = fmt(a) + "*(" + f.label + ")";
    return g;
}

ScalarField operator+(const ScalarField& a, double c) {
    ScalarField f = a;
    f.constant += c;
    f.label = "(" + a.label + ") + " + fmt(c);
    return f;
}

ZeroSequence::ZeroSequence(std::vector<Zero> raw) {
    for (const auto& z : raw) {
        if (z.multiplicity < 1)
            throw std::invalid_argument("zero multiplicity must be >= 1");
        if (!std::isfinite(z.point.real()) || !std::isfinite(z.point.imag()))
            throw std::invalid_argument("zero point must be finite");
    }
    std::sort(raw.begin(), raw.end(),
              [](const Zero& a, const Zero& b) { return point_less(a.point, b.point); });
    for (const auto& z : raw) {
        if (!entries.empty() && entries.back().point == z.point)
            entries.back().multiplicity += z.multiplicity;
        else
            entries.push_back(z);
    }
}

int ZeroSequence::total_multiplicity() const {
    int t = 0;
    for (const auto& z : entries) t += z.multiplicity;
    return t;
}

double log_modulus(const ZeroSequence& zs, complexd z) {
    double acc = 0;
    for (const auto& e : zs.entries) {
        double d = std::abs(z - e.point);
        if (d == 0.0) return neg_inf;
        acc += e.multiplicity * std::log(d);
    }
    return acc;
}

ScalarField potential_field(const ZeroSequence& zs, Domain domain) {
    ScalarField f;
    f.domain = domain;
    for (const auto& e : zs.entries)
        f.atoms.push_back({e.point, static_cast<double>(e.multiplicity)});
    f.label = "log-modulus(" + std::to_string(zs.entries.size()) + " zeros)";
    return f;
}

}  // namespace subh
