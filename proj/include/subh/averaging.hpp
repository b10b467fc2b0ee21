#pragma once

#include "subh/field.hpp"

namespace subh {

// Product quadrature controls: composite midpoint in radius (the t*dt panel
// weights are exact per panel) times uniform trapezoid in angle, refined by
// doubling both with Richardson extrapolation until the relative tolerance is
// met.
struct QuadratureSpec {
    int radial = 8;     // >= 4
    int angular = 32;   // >= 8
    double tol = 1e-8;  // relative, in (0, 1e-2]

    void validate() const;
};

struct AverageResult {
    double value = 0;
    double error = 0;  // estimate, 0 for exactly integrated parts
    long evals = 0;
    bool converged = true;
};

// (1/pi r^2) * integral of the field over the closed disk {|w-z| <= r}.
// Log atoms in the disk integrate exactly:
//   avg of ln|w-a| over disk(z,r) = ln r - 1/2 + d^2/(2r^2)  for d=|a-z| <= r,
//                                 = ln d                      for d >= r.
// Homogeneous polar parts use the exact radial integral and adaptive
// Gauss-Legendre over the arc (split at profile kinks; an asin substitution
// removes the sqrt endpoint singularity when the disk excludes the origin).
AverageResult disk_average_detailed(const ScalarField& f, complexd z, double r,
                                    const QuadratureSpec& q = {});
double disk_average(const ScalarField& f, complexd z, double r,
                    const QuadratureSpec& q = {});

// Exact mean of ln|w - atom| over disk(z,r); exposed for tests.
double log_atom_disk_average(complexd atom, complexd z, double r);

// Disk averages at every node of the grid, with a per-node radius; returns a
// grid-sampled field.  Throws with the node coordinates when a disk leaves the
// domain.
ScalarField average_field(const ScalarField& f, const std::function<double(complexd)>& radius,
                          const GridSpec& grid, const QuadratureSpec& q = {});

}  // namespace subh
