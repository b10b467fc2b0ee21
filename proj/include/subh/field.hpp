#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "subh/domain.hpp"
#include "subh/grid.hpp"

namespace subh {

// weight * ln|z - point|
struct LogAtom {
    complexd point;
    double weight;
};

// coef * h(arg z) * |z|^rho, the positively homogeneous extension of a
// 2*pi-periodic profile.  Kink angles let the averaging quadrature split its
// arc integrals where h' jumps.
struct PolarPart {
    std::function<double(double)> profile;
    double rho = 1.0;
    double coef = 1.0;
    std::vector<double> kinks;  // angles in [0, 2*pi), sorted
};

// Extended-real scalar field on a Domain, stored as a sum of structured parts:
//   constant + sum of log atoms + smooth closure + bilinear grid samples
//   + homogeneous polar parts.
// The structure lets disk averages use exact formulas for atoms and
// arc-quadrature for polar parts, and lets field subtraction cancel shared
// atoms exactly.  Values may be -inf (at atoms with positive weight); +inf or
// NaN is an evaluation error.
struct ScalarField {
    Domain domain = Domain::whole_plane();
    double constant = 0.0;
    std::vector<LogAtom> atoms;
    std::function<double(complexd)> smooth;       // may be empty
    std::shared_ptr<const GridData> grid;         // may be null
    std::vector<PolarPart> polars;
    std::string label = "field";

    // Evaluate at an interior point; throws std::domain_error outside the
    // domain and std::runtime_error when the value would be +inf/NaN.
    double operator()(complexd z) const;

    // Value with the atoms sitting exactly at z excluded; their total weight is
    // returned through atom_weight_here.  Used by Riesz extraction near
    // singular nodes.
    double value_excluding_atoms_at(complexd z, double* atom_weight_here) const;
    // Value minus the potentials of the given atom subset (indices into atoms).
    double value_excluding_atoms(complexd z, const std::vector<int>& exclude) const;

    bool has_generic_part() const { return static_cast<bool>(smooth) || grid != nullptr; }
};

ScalarField constant_field(double value, Domain domain = Domain::whole_plane());
ScalarField smooth_field(std::function<double(complexd)> f, std::string label,
                         Domain domain = Domain::whole_plane());
ScalarField grid_field(std::shared_ptr<const GridData> data, Domain domain);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double a, const ScalarField& f);
ScalarField operator+(const ScalarField& a, double c);

// Finite multiset of zeros with multiplicities.  Construction merges duplicate
// points by summing multiplicities and keeps entries sorted for determinism.
struct Zero {
    complexd point;
    int multiplicity;
};

struct ZeroSequence {
    std::vector<Zero> entries;

    ZeroSequence() = default;
    explicit ZeroSequence(std::vector<Zero> raw);

    int total_multiplicity() const;
    bool empty() const { return entries.empty(); }
};

// log|f_Lambda|(z) = sum multiplicity * ln|z - lambda|; -inf iff z in Lambda.
double log_modulus(const ZeroSequence& zs, complexd z);
// The same as a ScalarField of atoms.
ScalarField potential_field(const ZeroSequence& zs, Domain domain = Domain::whole_plane());

}  // namespace subh
