#pragma once

#include <variant>

#include "subh/common.hpp"

namespace subh {

enum class DomainKind { UnitDisk, Rect, Plane };

// Region of definition for scalar fields: unit disk, axis-aligned rectangle,
// or the whole plane.  Boundary distances are exact.
struct Domain {
    DomainKind kind = DomainKind::Plane;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // rectangle corners

    static Domain unit_disk() { return Domain{DomainKind::UnitDisk, 0, 0, 0, 0}; }
    static Domain rectangle(double x0, double x1, double y0, double y1);
    static Domain whole_plane() { return Domain{DomainKind::Plane, 0, 0, 0, 0}; }

    // Signed distance to the boundary: positive inside, +inf for the plane.
    double boundary_distance(complexd z) const;
    bool contains(complexd z) const { return boundary_distance(z) > 0; }
    // Closed disk {|w-z| <= r} inside the open domain.
    bool contains_disk(complexd z, double r) const;

    std::string describe() const;
};

// Query regions for counting/measure operations.
struct RectRegion {
    double x0, x1, y0, y1;
};
struct DiskRegion {
    complexd center;
    double radius;
};
// Polar sector about the origin: r in [r0,r1], angle in the arc that starts at
// a0 and spans to a1 going counterclockwise.
struct SectorRegion {
    double r0, r1, a0, a1;
};

using Region = std::variant<RectRegion, DiskRegion, SectorRegion>;

// Closed membership: boundary points count as inside.
bool region_contains(const Region& region, complexd z);
// Half-open membership used to assign points to cells of a partition without
// double counting: [x0,x1) x [y0,y1) for rectangles, [a0,a1) for sector arcs.
bool region_contains_half_open(const Region& region, complexd z);

double region_area(const Region& region);

}  // namespace subh
