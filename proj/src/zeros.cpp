#include "subh/zeros.hpp"

#include <algorithm>

namespace subh {

namespace {

// Regularized value standing in for w*ln|z-z| at a singular lattice node.  The
// -pi/2 is the 2D lattice Green's function constant: with it the five-point
// masses around an on-node atom sum to the atom's weight in the refinement
// limit.
double singular_node_value(double weight, double h) {
    return weight * (std::log(h) - pi / 2.0);
}

RectRegion node_cell(const GridSpec& g, int i, int j) {
    double h = g.step();
    return {g.x(i) - h / 2, g.x(i) + h / 2, g.y(j) - h / 2, g.y(j) + h / 2};
}

}  // namespace

DiscreteMeasure discrete_riesz(const ScalarField& field, const GridSpec& grid,
                               const RieszOptions& opt) {
    const int nx = grid.nx, ny = grid.ny;
    const double h = grid.step();
    Eigen::ArrayXXd values(nx, ny);
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> singular(nx, ny);
    Eigen::ArrayXXd atom_weight = Eigen::ArrayXXd::Zero(nx, ny);
    singular.setConstant(false);

    long n_singular = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            complexd z = grid.node(i, j);
            double v = field(z);
            if (is_neg_inf(v)) {
                double w = 0;
                double rest = field.value_excluding_atoms_at(z, &w);
                if (w > 0 && !is_neg_inf(rest)) {
                    values(i, j) = rest + singular_node_value(w, h);
                    atom_weight(i, j) = w;
                } else {
                    // -inf not caused by an exact atom (e.g. grid samples);
                    // nothing to regularize against.
                    values(i, j) = neg_inf;
                }
                singular(i, j) = true;
                ++n_singular;
            } else {
                values(i, j) = v;
            }
        }
    }
    long interior = static_cast<long>(nx - 2) * (ny - 2);
    if (interior <= 0) throw std::invalid_argument("grid too small for stencils");
    if (n_singular * 10 > interior)
        throw std::runtime_error("too many singular nodes for Riesz extraction");

    // Atoms not on nodes, for the correction mode.
    const bool correct = opt.atom_correction_radius > 0;
    const double rc = opt.atom_correction_radius;

    DiscreteMeasure out;
    out.cells.reserve(interior);
    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            complexd z = grid.node(i, j);
            RectRegion cell = node_cell(grid, i, j);
            double mass;
            std::vector<int> near;
            double counting = 0;
            if (correct) {
                for (int k = 0; k < static_cast<int>(field.atoms.size()); ++k) {
                    if (std::abs(field.atoms[k].point - z) <= rc) {
                        near.push_back(k);
                        if (region_contains_half_open(Region{cell}, field.atoms[k].point))
                            counting += field.atoms[k].weight;
                    }
                }
            }
            if (correct && !near.empty()) {
                auto corrected = [&](int a, int b) {
                    return field.value_excluding_atoms(grid.node(a, b), near);
                };
                double lap = corrected(i - 1, j) + corrected(i + 1, j) + corrected(i, j - 1) +
                             corrected(i, j + 1) - 4.0 * corrected(i, j);
                mass = std::isfinite(lap) ? lap / (2.0 * pi) + counting : counting;
            } else if (singular(i, j)) {
                // the counting measure of the atoms in this node's cell
                mass = atom_weight(i, j);
            } else {
                double lap = values(i - 1, j) + values(i + 1, j) + values(i, j - 1) +
                             values(i, j + 1) - 4.0 * values(i, j);
                if (std::isnan(lap) || std::isinf(lap)) {
                    // neighbor is an unregularizable -inf node
                    mass = 0;
                } else {
                    mass = lap / (2.0 * pi);
                }
            }
            out.cells.push_back({Region{cell}, mass});
        }
    }
    return out;
}

SubharmonicityReport subharmonicity_check(const ScalarField& field, const GridSpec& grid,
                                          std::vector<double> radii, double tol,
                                          int stride, const QuadratureSpec& q) {
    if (radii.empty()) {
        double h = grid.step();
        radii = {2 * h, 8 * h, 32 * h};
    }
    if (stride < 1) stride = 1;
    if (!(tol >= 0)) throw std::invalid_argument("tolerance must be >= 0");
    SubharmonicityReport rep;
    rep.stride = stride;
    for (int j = 0; j < grid.ny; j += stride) {
        for (int i = 0; i < grid.nx; i += stride) {
            complexd z = grid.node(i, j);
            if (!field.domain.contains(z)) continue;
            double v = field(z);
            for (double r : radii) {
                if (!field.domain.contains_disk(z, r)) continue;
                ++rep.checks;
                if (is_neg_inf(v)) continue;  // -inf <= anything
                double b = disk_average(field, z, r, q);
                double margin = b - v;
                if (margin < rep.margin) {
                    rep.margin = margin;
                    rep.worst_node = z;
                    rep.worst_radius = r;
                }
            }
        }
    }
    if (rep.checks == 0) {
        rep.margin = 0;
        rep.holds = true;
        return rep;
    }
    if (rep.margin == pos_inf) rep.margin = 0;  // only -inf nodes were visited
    rep.holds = rep.margin >= -tol;
    return rep;
}

}  // namespace subh
