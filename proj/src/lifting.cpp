#include "subh/lifting.hpp"

namespace subh {

Gauge Gauge::plane_power(double P) {
    if (!(P > 0)) throw std::invalid_argument("plane-power gauge needs P > 0");
    return {GaugeRule::PlanePower, P};
}

double gauge_value(const Gauge& g, const Domain& domain, complexd z) {
    if (!domain.contains(z)) throw std::domain_error("point outside domain: " + fmt(z));
    if (g.rule == GaugeRule::PlanePower) return std::pow(1.0 + std::abs(z), -g.P);
    double dist = domain.boundary_distance(z);
    return std::min(1.0, dist) / 2.0;
}

double lift_bounded_value(const ScalarField& N, complexd z, const QuadratureSpec& q) {
    double d = gauge_value(Gauge::half_distance(), N.domain, z);
    double b = disk_average(N, z, d, q);
    if (is_neg_inf(b)) return neg_inf;
    return b - std::log(d);
}

double lift_plane_value(const ScalarField& N, double P, complexd z, const QuadratureSpec& q) {
    double d = gauge_value(Gauge::plane_power(P), N.domain, z);
    return disk_average(N, z, d, q);
}

namespace {

ScalarField materialize(const ScalarField& N, const GridSpec& grid,
                        const std::function<double(complexd)>& value, const char* tag) {
    auto data = std::make_shared<GridData>(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) data->values(i, j) = value(grid.node(i, j));
    ScalarField out = grid_field(std::move(data), N.domain);
    out.label = std::string(tag) + "(" + N.label + ")";
    return out;
}

}  // namespace

ScalarField lift_bounded(const ScalarField& N, const GridSpec& grid, const QuadratureSpec& q) {
    if (N.domain.kind == DomainKind::Plane)
        throw std::invalid_argument("bounded lift needs a bounded domain");
    return materialize(
        N, grid, [&](complexd z) { return lift_bounded_value(N, z, q); }, "lift");
}

ScalarField lift_plane(const ScalarField& N, double P, const GridSpec& grid,
                       const QuadratureSpec& q) {
    if (N.domain.kind != DomainKind::Plane)
        throw std::invalid_argument("plane lift needs a whole-plane field");
    return materialize(
        N, grid, [&](complexd z) { return lift_plane_value(N, P, z, q); }, "lift-plane");
}

}  // namespace subh
