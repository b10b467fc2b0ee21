#include "subh/domain.hpp"

#include <algorithm>

namespace subh {

Domain Domain::rectangle(double x0, double x1, double y0, double y1) {
    if (!(x0 < x1) || !(y0 < y1))
        throw std::invalid_argument("rectangle domain needs x0 < x1 and y0 < y1");
    Domain d;
    d.kind = DomainKind::Rect;
    d.x0 = x0;
    d.x1 = x1;
    d.y0 = y0;
    d.y1 = y1;
    return d;
}

double Domain::boundary_distance(complexd z) const {
    switch (kind) {
        case DomainKind::UnitDisk:
            return 1.0 - std::abs(z);
        case DomainKind::Rect:
            return std::min(std::min(z.real() - x0, x1 - z.real()),
                            std::min(z.imag() - y0, y1 - z.imag()));
        case DomainKind::Plane:
            return pos_inf;
    }
    return pos_inf;
}

bool Domain::contains_disk(complexd z, double r) const {
    if (kind == DomainKind::Plane) return true;
    return r < boundary_distance(z);
}

std::string Domain::describe() const {
    switch (kind) {
        case DomainKind::UnitDisk:
            return "unit-disk";
        case DomainKind::Rect:
            return "rect " + fmt(x0) + " " + fmt(x1) + " " + fmt(y0) + " " + fmt(y1);
        case DomainKind::Plane:
            return "plane";
    }
    return "plane";
}

namespace {

// Angle of z measured from arc start a0, folded into [0, 2*pi).
double arc_offset(double a0, complexd z) {
    return wrap_angle(std::atan2(z.imag(), z.real()) - a0);
}

}  // namespace

bool region_contains(const Region& region, complexd z) {
    if (const auto* r = std::get_if<RectRegion>(&region)) {
        return z.real() >= r->x0 && z.real() <= r->x1 && z.imag() >= r->y0 &&
               z.imag() <= r->y1;
    }
    if (const auto* d = std::get_if<DiskRegion>(&region)) {
        return std::abs(z - d->center) <= d->radius;
    }
    const auto& s = std::get<SectorRegion>(region);
    double rad = std::abs(z);
    if (rad < s.r0 || rad > s.r1) return false;
    if (rad == 0.0) return true;  // the apex belongs to every sector of its annulus
    double span = wrap_angle(s.a1 - s.a0);
    if (span == 0.0) span = 2.0 * pi;  // full circle
    return arc_offset(s.a0, z) <= span;
}

bool region_contains_half_open(const Region& region, complexd z) {
    if (const auto* r = std::get_if<RectRegion>(&region)) {
        return z.real() >= r->x0 && z.real() < r->x1 && z.imag() >= r->y0 &&
               z.imag() < r->y1;
    }
    if (const auto* d = std::get_if<DiskRegion>(&region)) {
        return std::abs(z - d->center) < d->radius;
    }
    const auto& s = std::get<SectorRegion>(region);
    double rad = std::abs(z);
    if (rad < s.r0 || rad > s.r1) return false;
    double span = wrap_angle(s.a1 - s.a0);
    if (span == 0.0) span = 2.0 * pi;
    return arc_offset(s.a0, z) < span;
}

double region_area(const Region& region) {
    if (const auto* r = std::get_if<RectRegion>(&region)) {
        return (r->x1 - r->x0) * (r->y1 - r->y0);
    }
    if (const auto* d = std::get_if<DiskRegion>(&region)) {
        return pi * d->radius * d->radius;
    }
    const auto& s = std::get<SectorRegion>(region);
    double span = wrap_angle(s.a1 - s.a0);
    if (span == 0.0) span = 2.0 * pi;
    return 0.5 * span * (s.r1 * s.r1 - s.r0 * s.r0);
}

}  // namespace subh
