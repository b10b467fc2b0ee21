#pragma once

#include <vector>

#include "subh/field.hpp"
#include "subh/grid.hpp"

namespace subh {

// Positive (in intent) measure: masses on pairwise-disjoint cells plus atoms.
// Cell masses extracted from discrete Laplacians can carry FP-level negative
// values; validate() checks the positivity contract explicitly where a caller
// needs it.
struct MeasureCell {
    Region region;
    double mass;
};
struct MeasureAtom {
    complexd point;
    double mass;
};

struct DiscreteMeasure {
    std::vector<MeasureCell> cells;
    std::vector<MeasureAtom> atoms;

    double total_mass() const;
    // Mass inside a query region: cells count when their center point lies in
    // the region (closed membership), atoms by point membership.
    double mass_in(const Region& region) const;
    // Same with half-open membership; used when summing over a partition so
    // shared edges are not double counted.
    double mass_in_half_open(const Region& region) const;
    bool has_atom_in_half_open(const Region& region) const;

    // Throws when a mass is below -tol or cells are malformed.
    void validate(double tol = 0.0) const;
};

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);

complexd region_center(const Region& region);

// Counting measure of a zero sequence over a closed region.
int counting_measure(const ZeroSequence& zs, const Region& region);
// The counting measure as atoms.
DiscreteMeasure counting_measure_atoms(const ZeroSequence& zs);

// Cellwise comparison "nu >= mu" over the inter-node boxes of a partition grid.
struct MeasureCompareReport {
    bool holds = false;
    double margin = 0;          // min over cells of nu(cell) - mu(cell)
    RectRegion worst_cell{0, 0, 0, 0};
    bool coarse_warning = false;  // a cell holds atoms of both measures
    int cells = 0;
};

MeasureCompareReport measure_geq(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                 const GridSpec& partition, double tol);

}  // namespace subh
