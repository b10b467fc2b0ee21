#pragma once

#include "subh/averaging.hpp"

namespace subh {

enum class GaugeRule { HalfDistance, PlanePower };

// Averaging-radius gauge: 0 < d(z) <= 1, strictly below the boundary distance
// on bounded domains.
struct Gauge {
    GaugeRule rule = GaugeRule::HalfDistance;
    double P = 1.0;  // plane-power exponent

    static Gauge half_distance() { return {GaugeRule::HalfDistance, 0}; }
    static Gauge plane_power(double P);
};

double gauge_value(const Gauge& g, const Domain& domain, complexd z);

// B(z, d(z); N) + ln(1/d(z)) with the half-distance gauge.
double lift_bounded_value(const ScalarField& N, complexd z, const QuadratureSpec& q = {});
// B(z, (1+|z|)^(-P); N); no additive log term.
double lift_plane_value(const ScalarField& N, double P, complexd z,
                        const QuadratureSpec& q = {});

// Grid-materialized lifts (the repeated-comparison consumers want samples).
ScalarField lift_bounded(const ScalarField& N, const GridSpec& grid,
                         const QuadratureSpec& q = {});
ScalarField lift_plane(const ScalarField& N, double P, const GridSpec& grid,
                       const QuadratureSpec& q = {});

}  // namespace subh
