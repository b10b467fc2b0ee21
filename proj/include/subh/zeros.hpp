#pragma once

#include "subh/averaging.hpp"
#include "subh/measure.hpp"

namespace subh {

struct RieszOptions {
    // > 0: subtract the potentials of known atoms within this radius of a node
    // before applying the stencil, and book those atoms' masses as counting
    // mass in their containing cells.  Gives clean per-cell masses near atoms
    // for cellwise measure comparisons.
    double atom_correction_radius = 0.0;
};

// (1/2pi) * (5-point Laplacian) * h^2 per interior node, each mass on the
// node-centered h x h cell.  Nodes where the field is -inf (atoms of a
// potential) get the counting mass of the atoms in their cell; neighboring
// stencils see the atom's value continued as weight*(ln h - pi/2), the lattice
// regularization that makes the recovered mass converge under refinement.
DiscreteMeasure discrete_riesz(const ScalarField& field, const GridSpec& grid,
                               const RieszOptions& opt = {});

struct SubharmonicityReport {
    bool holds = true;
    double margin = pos_inf;  // min over checks of B(z,r) - field(z)
    complexd worst_node{0, 0};
    double worst_radius = 0;
    long checks = 0;
    int stride = 1;
};

// Sub-mean-value certification: B(z,r) >= field(z) - tol at each (strided)
// node for every radius that keeps the disk inside the domain.  Empty radii
// list means {2h, 8h, 32h}.
SubharmonicityReport subharmonicity_check(const ScalarField& field, const GridSpec& grid,
                                          std::vector<double> radii, double tol,
                                          int stride = 1, const QuadratureSpec& q = {});

}  // namespace subh
